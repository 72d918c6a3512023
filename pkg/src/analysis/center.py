"""
Centers
The odd center OZ(OH^n_C) and the center Z(H^n) through the diagonal
characterization z_b * 1_ba = 1_ba * z_a, the honest and super centers of
any arc algebra by brute force, and the map h from the Springer quotient
onto the odd center.
"""
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional

from config import SIZE_GUARDS
from src.algebra.base import ArcAlgebra, ArcElement, BasisVector
from src.algebra.even_arc import EvenArcAlgebra
from src.algebra.exterior import ExtElement, GaussInt, bits, popcount
from src.algebra.odd_arc import OddArcAlgebra
from src.analysis.graded import GradedRank
from src.analysis.linalg import diagonalize, kernel_basis, mat_vec
from src.analysis.springer import (admissible_generators, epsilon, normal_form, quotient_basis,
                                  skew_ring)
from src.diagrams.chronology import ChoiceC
from src.diagrams.matchings import ClosedDiagram, Matching
from src.errors import SizeError
from src.report import CheckReport, combine

# equation key (top, bottom, result mask) -> {unknown index: coefficient}
System = dict[tuple[int, int, int], dict[int, int]]


@dataclass
class CenterResult:
    n: int
    kind: str
    basis: list[ArcElement]
    graded_rank: GradedRank
    systems: dict[int, System] = field(default_factory=dict)
    report: Optional[CheckReport] = None

    @property
    def rank(self) -> int:
        return self.graded_rank.total

    def to_dict(self) -> dict:
        out = {'n': self.n, 'kind': self.kind, 'rank': self.rank,
               'graded_rank': self.graded_rank.to_dict(),
               'basis': [str(z) for z in self.basis]}
        if self.report is not None:
            out['check'] = self.report.to_dict()
        return out


def _check_size(n: int, guard: str = "max_n_center"):
    if n > SIZE_GUARDS[guard]:
        raise SizeError(f"limited to n <= {SIZE_GUARDS[guard]}")


# -----------------------------------------------------------------------------
# Diagonal characterization
# -----------------------------------------------------------------------------

def diagonal_unknowns(algebra: ArcAlgebra, length: int) -> list[BasisVector]:
    return [bv for a in algebra.ids() for bv in algebra.piece_basis(a, a)
            if popcount(bv.mask) == length]


def characterization_system(algebra: ArcAlgebra, length: int) -> System:
    """
    Rows of z_b * 1_ba - 1_ba * z_a = 0 for z supported on diagonal
    monomials of the given word length. Only merge cobordisms enter.
    """
    unknowns = diagonal_unknowns(algebra, length)
    system: System = {}
    for b in algebra.ids():
        for a in algebra.ids():
            if a == b:
                continue
            for col, u in enumerate(unknowns):
                if u.top == b:
                    products = algebra.constants(b, b, a).get((u.mask, 0), {})
                    sign = 1
                elif u.top == a:
                    products = algebra.constants(b, a, a).get((0, u.mask), {})
                    sign = -1
                else:
                    continue
                for m, c in products.items():
                    row = system.setdefault((b, a, m), {})
                    row[col] = row.get(col, 0) + sign * c
    return {k: {c: v for c, v in row.items() if v} for k, row in system.items()}


def _solve_characterization(algebra: ArcAlgebra, kind: str) -> CenterResult:
    n = algebra.n
    basis: list[ArcElement] = []
    graded = GradedRank()
    systems: dict[int, System] = {}
    for length in range(n + 1):
        unknowns = diagonal_unknowns(algebra, length)
        system = characterization_system(algebra, length)
        systems[length] = system
        rows = [[row.get(c, 0) for c in range(len(unknowns))]
                for _, row in sorted(system.items()) if row]
        kernel = kernel_basis(rows, len(unknowns))
        for vector in kernel:
            basis.append(ArcElement(n, {u: v for u, v in zip(unknowns, vector) if v}))
        # diagonal monomials of word length k sit in qdeg 2k
        graded.add(2 * length, len(kernel))
    result = CenterResult(n, kind, basis, graded, systems)
    result.report = CheckReport(f"{kind} center rank n={n}", True)
    expected = comb(2 * n, n)
    if graded.total != expected:
        result.report.fail(f"rank {graded.total}, expected {expected}",
                           graded_rank=graded.to_dict())
    else:
        result.report.note(f"graded rank {graded}")
    return result


def odd_center(algebra: OddArcAlgebra) -> CenterResult:
    """OZ(OH^n_C) as the kernel of the characterization system over Z."""
    _check_size(algebra.n)
    return _solve_characterization(algebra, "odd")


def even_center(n: int, algebra: Optional[EvenArcAlgebra] = None) -> CenterResult:
    _check_size(n)
    return _solve_characterization(algebra if algebra is not None else EvenArcAlgebra(n), "even")


def springer_comparison(n: int) -> CheckReport:
    """Graded rank of Z(H^n) against the odd Springer quotient."""
    even = even_center(n).graded_rank
    odd = quotient_basis(n).graded_rank()
    report = CheckReport(f"Z(H^{n}) vs odd Springer quotient", even == odd)
    if even != odd:
        report.fail(f"{even} != {odd}", even=even.to_dict(), odd=odd.to_dict())
    else:
        report.note(f"both {even}")
    return report


def center_choice_independence(n: int, choices: Iterable[ChoiceC]) -> CheckReport:
    """The characterization system is literally the same for every choice."""
    _check_size(n, "max_n_choices")
    report = CheckReport(f"center system independent of C, n={n}", True)
    reference = None
    for k, choice in enumerate(choices):
        algebra = OddArcAlgebra(n, choice)
        systems = {length: characterization_system(algebra, length) for length in range(n + 1)}
        if reference is None:
            reference = systems
        elif systems != reference:
            return report.fail("systems differ", choice_index=k)
    report.note("all systems identical")
    return report


def in_characterization(algebra: ArcAlgebra, z: ArcElement) -> bool:
    """z is diagonal and z * 1_ba == 1_ba * z for all b != a."""
    if any(k.top != k.bottom for k in z.terms):
        return False
    for b in algebra.ids():
        for a in algebra.ids():
            if a != b:
                one = algebra.one(b, a)
                if algebra.multiply(z, one) != algebra.multiply(one, z):
                    return False
    return True


# -----------------------------------------------------------------------------
# Brute-force centers (any algebra, also over Z[i])
# -----------------------------------------------------------------------------

def _sign(p: int, q: int, graded: bool) -> int:
    return -1 if graded and p * q % 2 else 1


def graded_center(algebra: ArcAlgebra, supercommute: bool) -> CenterResult:
    """
    Elements z with z*x = x*z (or (-1)^{p(x)p(z)} x*z) for every basis x,
    solved per (qdeg, parity) class. Over Z[i] real and imaginary parts are
    separate unknowns; the graded rank is then counted over Z[i].
    """
    _check_size(algebra.n, "max_n_iso")
    n = algebra.n
    basis_all = algebra.basis()
    classes: dict[tuple[int, int], list[BasisVector]] = {}
    for bv in basis_all:
        classes.setdefault((algebra.qdeg(bv), algebra.parity(bv)), []).append(bv)
    gaussian = algebra.GAUSSIAN
    width = 2 if gaussian else 1
    out_basis: list[ArcElement] = []
    graded = GradedRank()
    for (qdeg, p), unknowns in sorted(classes.items()):
        rows: dict = {}
        for col, u in enumerate(unknowns):
            for x in basis_all:
                sign = _sign(p, algebra.parity(x), supercommute)
                for k, c in algebra.product_basis(u, x).items():
                    _add(rows, (x, k), col, c, gaussian)
                for k, c in algebra.product_basis(x, u).items():
                    _add(rows, (x, k), col, -sign * c, gaussian)
        cols = width * len(unknowns)
        ordered = [rows[k] for k in sorted(rows, key=repr)]
        matrix = [[row.get(c, 0) for c in range(cols)] for row in ordered if any(row.values())]
        kernel = kernel_basis(matrix, cols)
        for vector in kernel:
            terms = {}
            for i, u in enumerate(unknowns):
                if gaussian:
                    value = GaussInt(vector[2 * i], vector[2 * i + 1])
                else:
                    value = vector[i]
                if value:
                    terms[u] = value
            out_basis.append(ArcElement(n, terms))
        graded.add(qdeg, len(kernel) // width)
    kind = ("super" if supercommute else "honest") + (" Z[i]" if gaussian else "")
    return CenterResult(n, kind, out_basis, graded)


def _add(rows: dict, key, col: int, c, gaussian: bool):
    """Accumulate c * unknown[col]; over Z[i] split into real and imaginary rows."""
    if not gaussian:
        row = rows.setdefault(key, {})
        row[col] = row.get(col, 0) + c
        return
    c = GaussInt.lift(c)
    re_row = rows.setdefault(key + ("re",), {})
    im_row = rows.setdefault(key + ("im",), {})
    # (a + bi)(u + vi) = (au - bv) + (bu + av)i
    re_row[2 * col] = re_row.get(2 * col, 0) + c.re
    re_row[2 * col + 1] = re_row.get(2 * col + 1, 0) - c.im
    im_row[2 * col] = im_row.get(2 * col, 0) + c.im
    im_row[2 * col + 1] = im_row.get(2 * col + 1, 0) + c.re


def realified(z: ArcElement, index: dict[BasisVector, int]) -> list[int]:
    """Integer coordinates (re, im interleaved) of z."""
    out = [0] * (2 * len(index))
    for k, c in z.terms.items():
        c = GaussInt.lift(c)
        out[2 * index[k]] = c.re
        out[2 * index[k] + 1] = c.im
    return out


def supercenter_check(algebra: ArcAlgebra, center: CenterResult,
                      honest: Optional[CenterResult] = None) -> CheckReport:
    """
    Every center basis element supercommutes with every basis vector; when
    an honest center is given, each of its elements lies in the odd center.
    """
    report = CheckReport(f"supercommutation of the center n={algebra.n}", True)
    basis = algebra.basis()
    for z in center.basis:
        pz = algebra.parity(z)
        for bv in basis:
            x = ArcElement.basis(algebra.n, bv)
            sign = _sign(pz, algebra.parity(bv), True)
            if algebra.multiply(z, x) != algebra.multiply(x, z).scale(sign):
                return report.fail("center element does not supercommute",
                                   z=str(z), x=list(bv))
    if honest is not None:
        for z in honest.basis:
            if not in_characterization(algebra, z):
                return report.fail("commuting element outside the odd center", z=str(z))
        report.note(f"{len(honest.basis)} commuting elements lie in the odd center")
    return report


# -----------------------------------------------------------------------------
# The map h
# -----------------------------------------------------------------------------

class SpringerMap:
    """
    h: x_i -> sum over a of the circle of W(a)a through point i, extended
    multiplicatively with the algebra product.
    """

    def __init__(self, algebra: OddArcAlgebra):
        _check_size(algebra.n)
        self.algebra = algebra
        self.n = algebra.n
        self._monomials: dict[int, ArcElement] = {0: algebra.unit()}

    def of_variable(self, i: int) -> ArcElement:
        terms = {}
        for a in self.algebra.ids():
            k = self.algebra.diagram(a, a).circle_of[i]
            terms[BasisVector(a, a, 1 << k)] = 1
        return ArcElement(self.n, terms)

    def of_monomial(self, mask: int) -> ArcElement:
        """Image of x_{i1} x_{i2} ... (i1 < i2 < ...)."""
        cached = self._monomials.get(mask)
        if cached is None:
            low = mask & -mask
            first = bits(low)[0] + 1
            cached = self.algebra.multiply(self.of_variable(first), self.of_monomial(mask ^ low))
            self._monomials[mask] = cached
        return cached

    def __call__(self, p: ExtElement) -> ArcElement:
        out = self.algebra.zero()
        for m, c in p.terms.items():
            out = out + self.of_monomial(m).scale(c)
        return out


def h_map(n: int, algebra: Optional[OddArcAlgebra] = None) -> dict[int, ArcElement]:
    """Images of x_1 .. x_2n."""
    h = SpringerMap(algebra if algebra is not None else OddArcAlgebra(n))
    return {i: h.of_variable(i) for i in range(1, 2 * n + 1)}


def _diagonal_vector(z: ArcElement, unknowns: list[BasisVector]) -> list[int]:
    index = {u: i for i, u in enumerate(unknowns)}
    out = [0] * len(unknowns)
    for k, c in z.terms.items():
        out[index[k]] = c
    return out


def verify_iso(algebra: OddArcAlgebra) -> CheckReport:
    """h is a graded isomorphism from the Springer quotient onto the odd center."""
    n = algebra.n
    _check_size(n, "max_n_iso")
    h = SpringerMap(algebra)
    quotient = quotient_basis(n)
    center = odd_center(algebra)
    reports = [center.report]

    killed = CheckReport("h kills every eps_r^S", True)
    for r, S in admissible_generators(n):
        image = h(epsilon(n, r, S))
        if image:
            killed.fail(f"h(eps_{r}^{S}) != 0", r=r, S=list(S), image=str(image))
            break
    reports.append(killed)

    onto = CheckReport("h maps the quotient basis onto the odd center", True)
    for length, part in sorted(quotient.degrees.items()):
        if length not in center.systems:
            # words longer than n vanish on every diagonal piece
            if part.representatives:
                onto.fail(f"degree {2 * length}: quotient is nonzero above word length {n}",
                          degree=2 * length)
            continue
        unknowns = diagonal_unknowns(algebra, length)
        system = center.systems[length]
        rows = [[row.get(c, 0) for c in range(len(unknowns))] for _, row in sorted(system.items())]
        images = [_diagonal_vector(h(ExtElement(skew_ring(n), rep, 2 * n)),
                                   unknowns)
                  for rep in part.representatives]
        for v in images:
            if rows and any(mat_vec(rows, v)):
                onto.fail(f"image in degree {2 * length} outside the odd center",
                          degree=2 * length)
                break
        target = center.graded_rank[2 * length]
        if len(images) != target:
            onto.fail(f"degree {2 * length}: {len(images)} basis images, center rank {target}")
        elif images:
            d = diagonalize(images, len(unknowns))
            if d.rank != len(images) or not d.torsion_free:
                onto.fail(f"degree {2 * length}: images are not a basis of the center",
                          divisors=d.divisors)
    reports.append(onto)

    mult = CheckReport("h is multiplicative on quotient basis pairs", True)
    reps = quotient.representatives()
    for p in reps:
        for q in reps:
            lhs = algebra.multiply(h(p), h(q))
            rhs = h(normal_form(p.wedge(q), quotient))
            if lhs != rhs:
                mult.fail("h(p)h(q) != h(pq)", p=str(p), q=str(q))
                break
        if not mult:
            break
    reports.append(mult)
    return combine(f"Springer quotient ~ odd center, n={n}", reports)


# -----------------------------------------------------------------------------
# Free-point combinatorics (independent check of the kernel of h_a)
# -----------------------------------------------------------------------------

def exchange_parity(a: Matching, S: Iterable[int], R: Iterable[int], arc: tuple[int, int]) -> int:
    """
    Free points of S strictly inside `arc` plus points of R strictly inside
    it, mod 2. A point of S is free when its partner in a is not in S.
    """
    S, R = set(S), set(R)
    lo, hi = sorted(arc)
    partner = a.partner
    free = sum(1 for x in S if lo < x < hi and partner[x] not in S)
    inside = sum(1 for y in R if lo < y < hi)
    return (free + inside) % 2


def h_component(diagram: ClosedDiagram, S: Iterable[int], R: Iterable[int]) -> ExtElement:
    """h_a of the signed monomial prod_{i in R} x_i^S, on the circles of W(a)a."""
    S = sorted(S)
    R = sorted(R)
    sign = 1
    for i in R:
        if S.index(i) % 2:
            sign = -sign
    return ExtElement.monomial(diagram.circles, [diagram.circle_of[i] for i in R], sign, diagram.n)
