"""
Odd Springer Quotient
Skew polynomials in x1..x2n, the odd partially symmetric elements
eps_r^S and the quotient of the skew ring by the left ideal they generate.

The skew ring is taken modulo the squares x_i^2 from the start (they lie in
the ideal), so it is the exterior algebra on x1..x2n and the bitmask
ExtElement does all the arithmetic. Variables have degree 2: the element
offset is 2n so a word of length k has qdeg 2k.
"""
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from config import SIZE_GUARDS
from src.algebra.exterior import ExtElement, bits, popcount
from src.analysis.graded import GradedRank
from src.analysis.linalg import diagonalize
from src.errors import SizeError, TorsionError


def skew_ring(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, 2 * n + 1))


def skew_monomial(n: int, indices, coeff: int = 1) -> ExtElement:
    """x_{i1} x_{i2} ... for 1-based indices, in the order given."""
    return ExtElement.monomial(skew_ring(n), [i - 1 for i in indices], coeff, 2 * n)


def epsilon(n: int, r: int, S) -> ExtElement:
    """
    eps_r^S: sum over r-subsets i1 < ... < ir of S of x_{i1}^S ... x_{ir}^S,
    where x_i^S = (-1)^{(position of i in S) - 1} x_i.
    """
    S = sorted(S)
    if len(set(S)) != len(S) or not all(1 <= i <= 2 * n for i in S):
        raise ValueError(f"S={S} is not a subset of 1..{2 * n}")
    k = len(S) - n
    if not 1 <= k <= n:
        raise ValueError(f"|S|={len(S)} must lie in {n + 1}..{2 * n}")
    if not n - k + 1 <= r <= n + k:
        raise ValueError(f"r={r} outside {n - k + 1}..{n + k} for |S|={len(S)}")
    terms: dict[int, int] = {}
    for chosen in itertools.combinations(range(len(S)), r):
        sign = -1 if sum(chosen) % 2 else 1     # positions are 0-based here
        mask = 0
        for pos in chosen:
            mask |= 1 << (S[pos] - 1)
        terms[mask] = terms.get(mask, 0) + sign
    return ExtElement(skew_ring(n), terms, 2 * n)


def admissible_generators(n: int) -> list[tuple[int, tuple[int, ...]]]:
    """Every (r, S) allowed in eps_r^S."""
    out = []
    for k in range(1, n + 1):
        for S in itertools.combinations(range(1, 2 * n + 1), n + k):
            for r in range(n - k + 1, n + k + 1):
                out.append((r, S))
    return out


# -----------------------------------------------------------------------------
# Quotient
# -----------------------------------------------------------------------------

@dataclass
class DegreeQuotient:
    """Ideal and quotient in one word length."""
    length: int
    monomials: list[int]                       # column order, masks ascending
    relations: list[dict[int, int]]            # spanning rows of the ideal
    divisors: list[int]
    pivots: dict[int, dict[int, int]] = field(default_factory=dict)
    representatives: list[dict[int, int]] = field(default_factory=list)
    # set when no unit echelon exists: coordinates via T and rows of T^-1
    transform: Optional[tuple[list[list[int]], list[list[int]], list[int]]] = None

    @property
    def rank(self) -> int:
        return len(self.representatives)

    def reduce(self, vector: dict[int, int]) -> dict[int, int]:
        if self.transform is not None:
            return self._reduce_smith(vector)
        out = dict(vector)
        for p, row in self.pivots.items():
            c = out.get(p, 0)
            if c:
                for m, rc in row.items():
                    out[m] = out.get(m, 0) - c * rc
        return {m: c for m, c in out.items() if c}

    def _reduce_smith(self, vector: dict[int, int]) -> dict[int, int]:
        t, t_inverse, free = self.transform
        index = {m: i for i, m in enumerate(self.monomials)}
        v = [0] * len(self.monomials)
        for m, c in vector.items():
            v[index[m]] = c
        coords = [sum(v[r] * t[r][j] for r in range(len(v))) for j in range(len(v))]
        out: dict[int, int] = {}
        for j in free:
            if coords[j]:
                for col, c in enumerate(t_inverse[j]):
                    if c:
                        m = self.monomials[col]
                        out[m] = out.get(m, 0) + coords[j] * c
        return {m: c for m, c in out.items() if c}


@dataclass
class QuotientBasis:
    n: int
    degrees: dict[int, DegreeQuotient]

    @property
    def rank(self) -> int:
        return sum(d.rank for d in self.degrees.values())

    def graded_rank(self) -> GradedRank:
        return GradedRank({2 * k: d.rank for k, d in self.degrees.items() if d.rank})

    def representatives(self) -> list[ExtElement]:
        gens = skew_ring(self.n)
        return [ExtElement(gens, rep, 2 * self.n)
                for k in sorted(self.degrees) for rep in self.degrees[k].representatives]

    def to_dict(self, relations: bool = False) -> dict:
        out = {'n': self.n, 'rank': self.rank, 'graded_rank': self.graded_rank().to_dict(),
               'basis': [str(r) for r in self.representatives()]}
        if relations:
            out['relations'] = {
                str(k): {'monomials': d.monomials,
                         'rows': [[row.get(m, 0) for m in d.monomials] for row in d.relations],
                         'divisors': d.divisors}
                for k, d in sorted(self.degrees.items())}
        return out


def _relation_rows(n: int, length: int) -> list[dict[int, int]]:
    """All left monomial multiples m * eps_r^S of word length `length`, deduplicated."""
    gens = skew_ring(n)
    seen = set()
    rows = []
    for r, S in admissible_generators(n):
        if r > length:
            continue
        eps = epsilon(n, r, S)
        for chosen in itertools.combinations(range(2 * n), length - r):
            m = ExtElement.monomial(gens, chosen, 1, 2 * n)
            row = m.wedge(eps).terms
            if not row:
                continue
            # fix the sign so the leading monomial is positive
            lead = max(row)
            if row[lead] < 0:
                row = {k: -c for k, c in row.items()}
            key = frozenset(row.items())
            if key not in seen:
                seen.add(key)
                rows.append(dict(row))
    return rows


def _unit_echelon(rows: list[dict[int, int]]) -> Optional[dict[int, dict[int, int]]]:
    """
    Reduced echelon rows with pivot coefficient 1 on the largest available
    unit entry. None when some row never offers a unit pivot.
    """
    pivots: dict[int, dict[int, int]] = {}

    def reduce(row):
        out = dict(row)
        for p, prow in pivots.items():
            c = out.get(p, 0)
            if c:
                for m, rc in prow.items():
                    out[m] = out.get(m, 0) - c * rc
        return {m: c for m, c in out.items() if c}

    pending = list(rows)
    while pending:
        stuck = []
        progress = False
        for row in pending:
            row = reduce(row)
            if not row:
                continue
            units = [m for m, c in row.items() if abs(c) == 1]
            if not units:
                stuck.append(row)
                continue
            p = max(units)
            if row[p] < 0:
                row = {m: -c for m, c in row.items()}
            for q, qrow in pivots.items():
                c = qrow.get(p, 0)
                if c:
                    for m, rc in row.items():
                        qrow[m] = qrow.get(m, 0) - c * rc
                    pivots[q] = {m: v for m, v in qrow.items() if v}
            pivots[p] = row
            progress = True
        if stuck and not progress:
            return None
        pending = stuck
    return pivots


def _degree_quotient(n: int, length: int) -> DegreeQuotient:
    monomials = sorted(m for m in range(1 << (2 * n)) if popcount(m) == length)
    rows = _relation_rows(n, length)
    divisors: list[int] = []
    diag = None
    if rows:
        matrix = [[row.get(m, 0) for m in monomials] for row in rows]
        diag = diagonalize(matrix, len(monomials))
        if not diag.torsion_free:
            raise TorsionError(f"degree {2 * length}: elementary divisors {diag.divisors}")
        divisors = diag.divisors
    quotient = DegreeQuotient(length, monomials, rows, divisors)
    pivots = _unit_echelon(rows)
    if pivots is not None:
        quotient.pivots = pivots
        quotient.representatives = [{m: 1} for m in monomials if m not in pivots]
    else:
        # diag is set: a row without unit pivot implies rows exist
        free = [j for j in range(len(monomials)) if j >= len(diag.diagonal) or not diag.diagonal[j]]
        quotient.transform = (diag.t, diag.t_inverse, free)
        quotient.representatives = [
            {monomials[c]: v for c, v in enumerate(diag.t_inverse[j]) if v} for j in free]
    return quotient


@lru_cache(maxsize=None)
def quotient_basis(n: int) -> QuotientBasis:
    if n > SIZE_GUARDS["max_n_springer"]:
        raise SizeError(f"Springer quotient limited to n <= {SIZE_GUARDS['max_n_springer']}")
    degrees = {k: _degree_quotient(n, k) for k in range(2 * n + 1)}
    return QuotientBasis(n, degrees)


def normal_form(p: ExtElement, basis: QuotientBasis) -> ExtElement:
    """Canonical representative of p modulo the ideal."""
    if p.generators != skew_ring(basis.n):
        raise SizeError(f"polynomial in {p.generators} reduced with the n={basis.n} table")
    by_length: dict[int, dict[int, int]] = {}
    for m, c in p.terms.items():
        by_length.setdefault(popcount(m), {})[m] = c
    terms: dict[int, int] = {}
    for k, part in by_length.items():
        if k not in basis.degrees:
            raise SizeError(f"degree {2 * k} beyond the table")
        for m, c in basis.degrees[k].reduce(part).items():
            terms[m] = terms.get(m, 0) + c
    return ExtElement(p.generators, terms, p.qdeg_offset)


def variables_of(mask: int) -> list[int]:
    """1-based variable indices of a monomial."""
    return [k + 1 for k in bits(mask)]
