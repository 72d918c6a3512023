"""
Odd Arc Algebra
OH^n_C: pieces OF(W(b)a){n}, multiplied through the odd functor applied
to the chronology C_cba. Also holds the checks that only need the
product: the nonassociativity witness, the exterior diagonal, the mod-2
comparison with the even algebra and supercommutation on diagonals.
"""
from dataclasses import dataclass
from typing import Optional

from config import SIZE_GUARDS
from src.algebra.base import ArcAlgebra, ArcElement, BasisVector, TripleConstants
from src.algebra.even_arc import EvenArcAlgebra
from src.algebra.exterior import ExtElement, popcount
from src.algebra.tqft import execute, on_stack
from src.diagrams.chronology import ChoiceC, canonical_choice
from src.diagrams.matchings import Matching, StackedDiagram, matching_id
from src.errors import GeneratorError, GradingError, SizeError
from src.report import CheckReport


class OddArcAlgebra(ArcAlgebra):
    NAME = "Odd arc algebra"

    def __init__(self, n: int, choice: Optional[ChoiceC] = None):
        super().__init__(n)
        self.choice = choice if choice is not None else canonical_choice(n)
        if self.choice.n != n:
            raise SizeError(f"choice for n={self.choice.n} used with n={n}")

    def _compute_triple(self, c: int, b: int, a: int) -> TripleConstants:
        ms = self.matchings
        upper, lower = self.diagram(c, b), self.diagram(b, a)
        stacked = StackedDiagram((upper, lower))
        ch = self.choice.chronology(ms[c], ms[b], ms[a])
        out: TripleConstants = {}
        for mx in range(1 << len(upper)):
            x = ExtElement(upper.circles, {mx: 1})
            for my in range(1 << len(lower)):
                y = ExtElement(lower.circles, {my: 1})
                result = execute(ch, on_stack(stacked, (x, y)))
                if result:
                    self._check_degree(c, b, a, mx, my, result.terms)
                    out[(mx, my)] = dict(result.terms)
        return out

    def _check_degree(self, c: int, b: int, a: int, mx: int, my: int, terms: dict):
        expected = self.qdeg(BasisVector(c, b, mx)) + self.qdeg(BasisVector(b, a, my))
        for m in terms:
            found = self.qdeg(BasisVector(c, a, m))
            if found != expected:
                raise GradingError(f"product of monomials {mx}, {my} on ({c},{b},{a}) has a term "
                                   f"of qdeg {found}, expected {expected}")

    def multiply_pieces(self, c: int, b: int, a: int, x: ExtElement, y: ExtElement) -> ExtElement:
        """x in c(OH)b times y in b(OH)a, as an exterior element on W(c)a."""
        left = ArcElement.from_piece(self.n, c, b, x)
        right = ArcElement.from_piece(self.n, b, a, y)
        return self.multiply(left, right).piece(c, a)


def parity(x: ExtElement) -> int:
    """Word length mod 2 of a homogeneous piece element."""
    p = x.parity()
    if p is None:
        raise GeneratorError(f"parity of an inhomogeneous element: {x}")
    return p


# -----------------------------------------------------------------------------
# Nonassociativity
# -----------------------------------------------------------------------------

A2 = Matching(2, ((1, 2), (3, 4)))
B2 = Matching(2, ((1, 4), (2, 3)))


@dataclass
class NonassocWitness:
    x: ArcElement
    y: ArcElement
    z: ArcElement
    lhs: ArcElement     # (xy)z
    rhs: ArcElement     # x(yz)
    report: CheckReport


def nonassoc_witness(algebra: OddArcAlgebra) -> NonassocWitness:
    """
    x = b1 (outer circle of W(b)b), y = 1_ba, z = 1_ab, with a and b the two
    matchings of 4 points padded by small arcs; then (xy)z = -x(yz) != 0.
    """
    n = algebra.n
    if n < 2:
        raise SizeError("no nonassociative triple for n < 2")
    a = matching_id(A2.padded(n - 2))
    b = matching_id(B2.padded(n - 2))
    x = algebra.circle(b, b, 1)
    y = algebra.one(b, a)
    z = algebra.one(a, b)
    lhs = algebra.multiply(algebra.multiply(x, y), z)
    rhs = algebra.multiply(x, algebra.multiply(y, z))
    report = CheckReport(f"nonassociativity n={n}", True)
    if not lhs:
        report.fail("(xy)z vanishes", lhs=str(lhs))
    elif lhs != -rhs:
        report.fail("(xy)z != -x(yz)", lhs=str(lhs), rhs=str(rhs))
    else:
        report.note(f"(xy)z = {lhs}, x(yz) = {rhs}")
    return NonassocWitness(x, y, z, lhs, rhs, report)


# -----------------------------------------------------------------------------
# Checks against other structures
# -----------------------------------------------------------------------------

def diagonal_subalgebra(algebra: OddArcAlgebra) -> CheckReport:
    """Every product inside a(OH)a is the exterior product on W(a)a."""
    if algebra.n > SIZE_GUARDS["max_n_center"]:
        raise SizeError(f"diagonal check limited to n <= {SIZE_GUARDS['max_n_center']}")
    report = CheckReport(f"diagonal exterior subalgebra n={algebra.n}", True)
    for a in algebra.ids():
        circles = algebra.diagram(a, a).circles
        for mx in range(1 << len(circles)):
            for my in range(1 << len(circles)):
                got = algebra.product_basis(BasisVector(a, a, mx), BasisVector(a, a, my))
                expected = ExtElement(circles, {mx: 1}).wedge(ExtElement(circles, {my: 1}))
                want = {BasisVector(a, a, m): c for m, c in expected.terms.items()}
                if got != want:
                    return report.fail(f"diagonal {a}: product differs from the wedge",
                                       a=a, x=mx, y=my, got=str(got), expected=str(expected))
        report.note(f"[OK] a={a}")
    return report


def _reduce_mod2(terms: dict) -> frozenset:
    return frozenset(k for k, c in terms.items() if c % 2)


def mod2_agreement(odd: OddArcAlgebra, even: Optional[EvenArcAlgebra] = None) -> CheckReport:
    """Structure constants of the odd and even algebras agree mod 2."""
    even = even if even is not None else EvenArcAlgebra(odd.n)
    report = CheckReport(f"mod-2 agreement n={odd.n}", True)
    checked = 0
    for c, b, a in odd.triples():
        t_odd, t_even = odd.constants(c, b, a), even.constants(c, b, a)
        for key in set(t_odd) | set(t_even):
            lhs = _reduce_mod2(t_odd.get(key, {}))
            rhs = _reduce_mod2(t_even.get(key, {}))
            checked += 1
            if lhs != rhs:
                return report.fail("structure constants differ mod 2",
                                   triple=[c, b, a], pair=list(key),
                                   odd=sorted(lhs), even=sorted(rhs))
    report.note(f"{checked} nonzero basis products compared")
    return report


def supercommutation_report(algebra: ArcAlgebra) -> CheckReport:
    """On each diagonal piece, x*y = (-1)^{p(x)p(y)} y*x for generators and monomials."""
    report = CheckReport(f"diagonal supercommutation n={algebra.n}", True)
    for a in algebra.ids():
        for x in algebra.piece_basis(a, a):
            for y in algebra.piece_basis(a, a):
                xy = algebra.product_basis(x, y)
                yx = algebra.product_basis(y, x)
                sign = -1 if popcount(x.mask) * popcount(y.mask) % 2 else 1
                if xy != {k: sign * c for k, c in yx.items() if c}:
                    return report.fail("diagonal elements do not supercommute",
                                       a=a, x=x.mask, y=y.mask)
    return report

