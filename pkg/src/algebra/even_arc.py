"""
Even Arc Algebra
H^n built from the Frobenius algebra A = Z[X]/(X^2): merge multiplies,
split comultiplies with D(1) = X(x)1 + 1(x)X and D(X) = X(x)X. Replays the
same contraction plans as the odd algebra; the chronology is irrelevant
here, so the canonical one is used.
"""
from typing import Optional, Sequence

from src.algebra.base import ArcAlgebra, TripleConstants
from src.algebra.exterior import bits
from src.diagrams.chronology import canonical_chronology
from src.diagrams.cobordism import ContractionPlan, PlanStep
from src.errors import GeneratorError


class FrobElement:
    """
    Element of A^{(x)m}: monomial bitmasks mark the factors carrying X.
    Degree per factor: 1 -> -1, X -> +1, plus `qdeg_offset`.
    """

    __slots__ = ("generators", "terms", "qdeg_offset")

    def __init__(self, generators: Sequence, terms: Optional[dict] = None, qdeg_offset: int = 0):
        self.generators = tuple(generators)
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self.qdeg_offset = qdeg_offset

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrobElement):
            return NotImplemented
        return self.generators == other.generators and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def qdeg(self) -> Optional[int]:
        degrees = {2 * len(bits(m)) - len(self.generators) + self.qdeg_offset for m in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            word = "".join(f"X{k + 1}" for k in bits(m)) or "1"
            parts.append(word if c == 1 else f"{c}·{word}")
        return " + ".join(parts)


def _move(mask: int, subst: Sequence[int]) -> Optional[int]:
    """Relabel factors; two X landing on one factor give X^2 = 0."""
    out = 0
    for k in bits(mask):
        t = subst[k]
        if out >> t & 1:
            return None
        out |= 1 << t
    return out


def _apply_step(step: PlanStep, terms: dict) -> dict:
    out: dict = {}
    split = step.split
    for m, c in terms.items():
        nm = _move(m, step.subst)
        if nm is None:
            continue
        if split is None:
            out[nm] = out.get(nm, 0) + c
            continue
        lbit, rbit = 1 << split.left, 1 << split.right
        if nm & lbit:
            # D(X) = X (x) X
            out[nm | rbit] = out.get(nm | rbit, 0) + c
        else:
            for k in (nm | lbit, nm | rbit):
                out[k] = out.get(k, 0) + c
    return {m: c for m, c in out.items() if c}


def run_plan_even(plan: ContractionPlan, x: FrobElement) -> FrobElement:
    source = plan.source.generators()
    if x.generators != source:
        raise GeneratorError(f"element lives on {x.generators}, plan expects {source}")
    terms = x.terms
    for step in plan.steps:
        terms = _apply_step(step, terms)
    return FrobElement(plan.target.layers[0].circles, terms, x.qdeg_offset)


class EvenArcAlgebra(ArcAlgebra):
    NAME = "Even arc algebra"

    def _compute_triple(self, c: int, b: int, a: int) -> TripleConstants:
        ms = self.matchings
        plan = canonical_chronology((ms[c], ms[b], ms[a])).plan()
        upper = len(self.diagram(c, b))
        lower = len(self.diagram(b, a))
        gens = plan.source.generators()
        out: TripleConstants = {}
        for mx in range(1 << upper):
            for my in range(1 << lower):
                result = run_plan_even(plan, FrobElement(gens, {mx | my << upper: 1}))
                if result:
                    out[(mx, my)] = dict(result.terms)
        return out

    def even_multiply(self, c: int, b: int, a: int, x: FrobElement, y: FrobElement) -> FrobElement:
        """x in c(H)b times y in b(H)a."""
        if x.generators != self.diagram(c, b).circles or y.generators != self.diagram(b, a).circles:
            raise GeneratorError(f"factors do not live on W({c}){b} and W({b}){a}")
        table = self.constants(c, b, a)
        terms: dict = {}
        for mx, cx in x.terms.items():
            for my, cy in y.terms.items():
                for m, coeff in table.get((mx, my), {}).items():
                    terms[m] = terms.get(m, 0) + cx * cy * coeff
        return FrobElement(self.diagram(c, a).circles, terms, self.n)
