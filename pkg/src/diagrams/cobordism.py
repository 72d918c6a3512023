"""
Contraction Cobordisms
Simulates the saddle moves that contract the arcs of a middle matching
in a stacked diagram, step by step, and records for every step how the
old circles map to the new ones and which step is a split.

The result, a ContractionPlan, is purely topological. The odd and even
functors in src.algebra replay it on their own elements.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

from src.diagrams.matchings import StackedDiagram, UnionFind, close
from src.errors import DiagramError


class Orientation(Enum):
    LEFT_TO_RIGHT = "LR"
    RIGHT_TO_LEFT = "RL"

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.LEFT_TO_RIGHT else -1

    def reversed(self) -> "Orientation":
        if self is Orientation.LEFT_TO_RIGHT:
            return Orientation.RIGHT_TO_LEFT
        return Orientation.LEFT_TO_RIGHT


@dataclass(frozen=True)
class ContractionStep:
    """Contract `arc` of the middle matching with its mirror image."""
    arc: tuple[int, int]
    orientation: Orientation = Orientation.LEFT_TO_RIGHT

    def to_dict(self) -> dict:
        return {'arc': list(self.arc), 'or': self.orientation.value}


@dataclass(frozen=True)
class Split:
    left: int    # new slot of the circle through the left endpoint
    right: int
    sign: int    # +1: factor (g_left - g_right), -1: (g_right - g_left)


@dataclass(frozen=True)
class PlanStep:
    arc: tuple[int, int]
    subst: tuple[int, ...]       # old slot -> new slot
    new_size: int
    split: Optional[Split]

    @property
    def is_split(self) -> bool:
        return self.split is not None


@dataclass(frozen=True)
class ContractionPlan:
    source: StackedDiagram
    target: StackedDiagram
    interface: int
    steps: tuple[PlanStep, ...]

    @property
    def split_count(self) -> int:
        return sum(1 for s in self.steps if s.is_split)

    def split_positions(self) -> list[int]:
        return [k for k, s in enumerate(self.steps) if s.is_split]


class CircleState:
    """
    Nodes are (layer, point) pairs; every node sits on exactly two edges,
    so the connected components are the current circles.
    """

    def __init__(self, source: StackedDiagram):
        self.n = source.n
        self.layers = len(source.layers)
        self.edges: dict[tuple, tuple[int, int]] = {}
        for k, layer in enumerate(source.layers):
            for i, j in layer.top.arcs:
                self.edges[("top", k, i, j)] = (self.node(k, i), self.node(k, j))
            for i, j in layer.bottom.arcs:
                self.edges[("bottom", k, i, j)] = (self.node(k, i), self.node(k, j))

    def node(self, layer: int, point: int) -> int:
        return layer * 2 * self.n + point - 1

    def components(self) -> list[list[int]]:
        uf = UnionFind(self.layers * 2 * self.n)
        for u, v in self.edges.values():
            uf.union(u, v)
        return uf.components()

    def contract(self, interface: int, arc: tuple[int, int]):
        i, j = arc
        try:
            del self.edges[("bottom", interface, i, j)]
            del self.edges[("top", interface + 1, i, j)]
        except KeyError as e:
            raise DiagramError(f"arc {arc} is not available at interface {interface}") from e
        for p in (i, j):
            self.edges[("vertical", interface, p)] = (self.node(interface, p),
                                                      self.node(interface + 1, p))


def _slots(comps: list[list[int]]) -> dict[int, int]:
    return {node: s for s, comp in enumerate(comps) for node in comp}


@lru_cache(maxsize=None)
def compile_plan(source: StackedDiagram, interface: int,
                 steps: tuple[ContractionStep, ...]) -> ContractionPlan:
    """
    Contract the arcs between layer `interface` and the layer below it in
    the order given by `steps`.
    """
    if not 0 <= interface < len(source.layers) - 1:
        raise DiagramError(f"no interface {interface} in a stack of {len(source.layers)}")
    upper = source.layers[interface]
    lower = source.layers[interface + 1]
    if upper.bottom != lower.top:
        raise DiagramError(f"interface matchings differ: {upper.bottom} vs {lower.top}")
    middle = upper.bottom
    arcs = [s.arc for s in steps]
    if sorted(arcs) != list(middle.arcs):
        raise DiagramError(f"steps {arcs} are not a permutation of {middle.arcs}")

    state = CircleState(source)
    comps = state.components()
    plan_steps = []
    for step in steps:
        i, j = step.arc
        old_slot = _slots(comps)
        upper_node = state.node(interface, i)
        lower_node = state.node(interface + 1, i)
        is_split = old_slot[upper_node] == old_slot[lower_node]
        state.contract(interface, step.arc)
        new_comps = state.components()
        new_slot = _slots(new_comps)
        split = None
        if is_split:
            left = new_slot[state.node(interface, i)]
            right = new_slot[state.node(interface, j)]
            if left == right:
                raise DiagramError(f"split at {step.arc} did not separate circles")
            split = Split(left, right, step.orientation.sign)
            split_old = old_slot[upper_node]
        subst = []
        for s, comp in enumerate(comps):
            if split is not None and s == split_old:
                subst.append(split.left)
            else:
                subst.append(new_slot[comp[0]])
        plan_steps.append(PlanStep(step.arc, tuple(subst), len(new_comps), split))
        comps = new_comps

    fused = close(upper.top, lower.bottom)
    target = StackedDiagram(source.layers[:interface] + (fused,) + source.layers[interface + 2:])
    _check_final(state, comps, interface, target)
    return ContractionPlan(source, target, interface, tuple(plan_steps))


def _check_final(state: CircleState, comps: list[list[int]], interface: int,
                 target: StackedDiagram):
    """Final circles must be those of the target stack, in its order."""
    width = 2 * state.n
    labels = []
    for comp in comps:
        layer = comp[0] // width
        if layer > interface:
            layer -= 1
        points = tuple(sorted({node % width + 1 for node in comp
                               if node // width == comp[0] // width}))
        labels.append((layer, points))
    if tuple(labels) != target.generators():
        raise DiagramError(f"contraction ended in {labels}, expected {target.generators()}")
