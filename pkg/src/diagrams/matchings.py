"""
Crossingless Matchings and Circle Diagrams
Enumerates matchings of 2n points, closes pairs of them into circle
diagrams W(b)a and stacks diagrams on top of each other.

Points are numbered 1..2n. A diagram's circles are ordered by their
leftmost endpoint.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from config import SIZE_GUARDS
from src.errors import DiagramError, SizeError


class UnionFind:
    """Union-find over 0..size-1 with path compression."""

    def __init__(self, size: int):
        self.parents = list(range(size))

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root wins so component labels are stable
            if rb < ra:
                ra, rb = rb, ra
            self.parents[rb] = ra

    def components(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for i in range(len(self.parents)):
            groups.setdefault(self.find(i), []).append(i)
        return sorted(groups.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class Matching:
    """A crossingless matching of the points 1..2n."""
    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arcs = tuple(sorted((min(i, j), max(i, j)) for i, j in self.arcs))
        object.__setattr__(self, "arcs", arcs)
        points = sorted(p for arc in arcs for p in arc)
        if len(arcs) != self.n or points != list(range(1, 2 * self.n + 1)):
            raise DiagramError(f"arcs {arcs} do not pair up the points 1..{2 * self.n}")
        for i, j in arcs:
            for k, l in arcs:
                if i < k < j < l:
                    raise DiagramError(f"arcs {(i, j)} and {(k, l)} cross")

    @property
    def partner(self) -> dict[int, int]:
        out = {}
        for i, j in self.arcs:
            out[i] = j
            out[j] = i
        return out

    def contains(self, outer: tuple[int, int], inner: tuple[int, int]) -> bool:
        """True if `inner` is nested strictly inside `outer`."""
        return outer[0] < inner[0] and inner[1] < outer[1]

    def padded(self, extra: int) -> "Matching":
        """Append `extra` small arcs (2n+1,2n+2), ... on the right."""
        arcs = list(self.arcs)
        for k in range(extra):
            p = 2 * self.n + 2 * k + 1
            arcs.append((p, p + 1))
        return Matching(self.n + extra, tuple(arcs))

    def to_list(self) -> list[list[int]]:
        return [[i, j] for i, j in self.arcs]

    @classmethod
    def from_list(cls, pairs: Iterable[Iterable[int]]) -> "Matching":
        arcs = tuple(tuple(p) for p in pairs)
        return cls(len(arcs), arcs)

    def __str__(self):
        return "{" + ",".join(f"({i},{j})" for i, j in self.arcs) + "}"


def _matchings_on(points: tuple[int, ...]) -> list[tuple[tuple[int, int], ...]]:
    """First-arc recursion: the first point pairs with an even-offset point."""
    if not points:
        return [()]
    out = []
    first = points[0]
    for k in range(1, len(points), 2):
        inner = points[1:k]
        outer = points[k + 1:]
        for arcs_in in _matchings_on(inner):
            for arcs_out in _matchings_on(outer):
                out.append(((first, points[k]),) + arcs_in + arcs_out)
    return out


@lru_cache(maxsize=None)
def enumerate_matchings(n: int) -> tuple[Matching, ...]:
    """All Catalan(n) crossingless matchings in canonical order."""
    if n < 1 or n > SIZE_GUARDS["max_n"]:
        raise SizeError(f"n={n} outside 1..{SIZE_GUARDS['max_n']}")
    return tuple(Matching(n, arcs) for arcs in _matchings_on(tuple(range(1, 2 * n + 1))))


def matching_id(m: Matching) -> int:
    return enumerate_matchings(m.n).index(m)


def matching_label(m: Matching) -> str:
    return f"{m.n}:{matching_id(m)}"


@dataclass(frozen=True)
class ClosedDiagram:
    """
    The circle diagram W(top)bottom: `bottom` drawn below the line and the
    reflection of `top` above it.
    """
    top: Matching
    bottom: Matching
    circles: tuple[tuple[int, ...], ...] = field(init=False)
    circle_of: tuple[int, ...] = field(init=False)  # point (1-based) -> circle index, slot 0 unused

    def __post_init__(self):
        if self.top.n != self.bottom.n:
            raise DiagramError(f"cannot close matchings with n={self.top.n} and n={self.bottom.n}")
        n = self.top.n
        uf = UnionFind(2 * n)
        for i, j in self.top.arcs + self.bottom.arcs:
            uf.union(i - 1, j - 1)
        circles = tuple(tuple(p + 1 for p in comp) for comp in uf.components())
        circle_of = [0] * (2 * n + 1)
        for idx, circle in enumerate(circles):
            for p in circle:
                circle_of[p] = idx
        object.__setattr__(self, "circles", circles)
        object.__setattr__(self, "circle_of", tuple(circle_of))

    @property
    def n(self) -> int:
        return self.top.n

    def __len__(self):
        return len(self.circles)


@lru_cache(maxsize=None)
def close(top: Matching, bottom: Matching) -> ClosedDiagram:
    return ClosedDiagram(top, bottom)


@dataclass(frozen=True)
class StackedDiagram:
    """
    Closed diagrams stacked top to bottom. Global circle order lists all
    circles of the first layer, then the second, and so on.
    """
    layers: tuple[ClosedDiagram, ...]

    def __post_init__(self):
        if not self.layers:
            raise DiagramError("empty stack")
        ns = {layer.n for layer in self.layers}
        if len(ns) != 1:
            raise DiagramError(f"layers with different n: {sorted(ns)}")

    @property
    def n(self) -> int:
        return self.layers[0].n

    @property
    def upper(self) -> ClosedDiagram:
        return self.layers[0]

    @property
    def lower(self) -> ClosedDiagram:
        return self.layers[-1]

    def offsets(self) -> list[int]:
        out, total = [], 0
        for layer in self.layers:
            out.append(total)
            total += len(layer)
        return out

    def generators(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """Global generator labels (layer, circle)."""
        return tuple((k, c) for k, layer in enumerate(self.layers) for c in layer.circles)

    def __len__(self):
        return sum(len(layer) for layer in self.layers)


def stack(upper: ClosedDiagram, lower: ClosedDiagram, *more: ClosedDiagram) -> StackedDiagram:
    return StackedDiagram((upper, lower) + tuple(more))


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def circle_label(diagram: ClosedDiagram, index: int) -> str:
    return "{" + ",".join(map(str, diagram.circles[index])) + "}"


def piece_pairs(n: int) -> list[tuple[Matching, Matching]]:
    """All (b, a) pairs, b-major in canonical order."""
    ms = enumerate_matchings(n)
    return [(b, a) for b in ms for a in ms]


def lookup(n: int, label: Optional[str]) -> Matching:
    """Resolve 'k' or 'n:k' to a matching."""
    if label is None:
        raise DiagramError("missing matching label")
    k = label.split(":")[-1]
    ms = enumerate_matchings(n)
    try:
        return ms[int(k)]
    except (ValueError, IndexError) as e:
        raise DiagramError(f"unknown matching {label!r} for n={n}") from e
