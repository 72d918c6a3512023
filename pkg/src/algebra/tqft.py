"""
Odd Functor
Replays a contraction plan on exterior algebra elements:
  merge  - identify the two generators (quotient by a1 - a2)
  split  - send the old generator to the left circle, then wedge on the
           left with (g_left - g_right), negated for a right-to-left arrow
Birth, death and twist maps are provided for completeness.
"""
from functools import lru_cache
from typing import Optional, Sequence

from src.algebra.exterior import ExtElement, relabel, wedge_sign
from src.diagrams.chronology import Chronology, Triple, canonical_chronology
from src.diagrams.cobordism import ContractionPlan, PlanStep
from src.diagrams.matchings import StackedDiagram
from src.errors import GeneratorError


def _apply_step(step: PlanStep, terms: dict) -> dict:
    out: dict = {}
    split = step.split
    for m, c in terms.items():
        moved = relabel(m, step.subst)
        if moved is None:
            continue
        sign, nm = moved
        c = sign * c
        if split is None:
            out[nm] = out.get(nm, 0) + c
            continue
        lbit, rbit = 1 << split.left, 1 << split.right
        if not nm & lbit:
            k = nm | lbit
            out[k] = out.get(k, 0) + split.sign * wedge_sign(lbit, nm) * c
        if not nm & rbit:
            k = nm | rbit
            out[k] = out.get(k, 0) - split.sign * wedge_sign(rbit, nm) * c
    return {m: c for m, c in out.items() if c}


def run_plan(plan: ContractionPlan, x: ExtElement) -> ExtElement:
    """OF(plan) applied to x, which lives on plan.source."""
    source = plan.source.generators()
    if x.generators != source:
        raise GeneratorError(f"element lives on {x.generators}, plan expects {source}")
    terms = x.terms
    for step in plan.steps:
        terms = _apply_step(step, terms)
    return ExtElement(plan.target.generators(), terms, x.qdeg_offset)


def execute(ch: Chronology, x: ExtElement) -> ExtElement:
    """
    OF(C_cba) on an element of the stacked diagram W(c)bW(b)a; the result
    is expressed on the circles of W(c)a.
    """
    plan = ch.plan()
    out = run_plan(plan, x)
    return ExtElement(plan.target.layers[0].circles, out.terms, x.qdeg_offset)


@lru_cache(maxsize=None)
def split_count(triple: Triple) -> int:
    return canonical_chronology(triple).plan().split_count


def on_stack(stack: StackedDiagram, parts: Sequence[ExtElement]) -> ExtElement:
    """
    x1 ∧ x2 ∧ ... with x_k living on layer k; layer k's generators come
    after those of the layers above, so no sign appears.
    """
    if len(parts) != len(stack.layers):
        raise GeneratorError(f"{len(parts)} parts for {len(stack.layers)} layers")
    terms = {0: 1}
    for offset, layer, part in zip(stack.offsets(), stack.layers, parts):
        if part.generators != layer.circles:
            raise GeneratorError(f"part on {part.generators} does not fit layer {layer.circles}")
        terms = {m | (pm << offset): c * pc
                 for m, c in terms.items() for pm, pc in part.terms.items()}
    return ExtElement(stack.generators(), terms)


# -----------------------------------------------------------------------------
# Elementary maps outside contraction cobordisms
# -----------------------------------------------------------------------------

def merge(x: ExtElement, first: int, second: int) -> ExtElement:
    """Identify generator `second` with `first`; `second` disappears."""
    size = len(x.generators)
    keep = [k for k in range(size) if k != second]
    table = {k: keep.index(k) for k in keep}
    table[second] = keep.index(first)
    return x.substitute(table, [x.generators[k] for k in keep])


def split(x: ExtElement, index: int, left_label, right_label, orientation: int = 1) -> ExtElement:
    """
    Replace generator `index` by two circles (left at `index`, right
    appended last); left-wedge with orientation * (g_left - g_right).
    """
    size = len(x.generators)
    gens = list(x.generators)
    gens[index] = left_label
    gens.append(right_label)
    lifted = x.substitute(list(range(size)), gens)
    factor = ExtElement.gen(gens, index) - ExtElement.gen(gens, size)
    return factor.scale(orientation).wedge(lifted)


def birth(x: ExtElement, label, position: Optional[int] = None) -> ExtElement:
    """Unit inclusion: a new circle carrying 1."""
    size = len(x.generators)
    position = size if position is None else position
    gens = list(x.generators)
    gens.insert(position, label)
    table = [k if k < position else k + 1 for k in range(size)]
    return x.substitute(table, gens)


def death(x: ExtElement, index: int) -> ExtElement:
    """Positive death: contract with the dual of the dying generator."""
    contracted = x.contract(index)
    gens = [g for k, g in enumerate(x.generators) if k != index]
    return ExtElement(gens, {_drop_bit(m, index): c for m, c in contracted.terms.items()},
                      x.qdeg_offset)


def _drop_bit(mask: int, index: int) -> int:
    low = mask & ((1 << index) - 1)
    high = mask >> (index + 1)
    return low | (high << index)


def twist(x: ExtElement, permutation: Sequence[int]) -> ExtElement:
    """Permute circles: generator k becomes generator permutation[k]."""
    gens = [None] * len(x.generators)
    for k, target in enumerate(permutation):
        gens[target] = x.generators[k]
    return x.substitute(list(permutation), gens)
