"""
Base Arc Algebra
The even, odd and twisted arc algebras share their graded pieces, their
basis and the bilinear extension of the product. Each subclass only says
how two basis vectors multiply inside one triple (c, b, a).
"""
import itertools
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, NamedTuple, Optional

from config import PARALLEL
from src.algebra.exterior import Coefficient, ExtElement, bits, popcount
from src.diagrams.matchings import ClosedDiagram, Matching, close, enumerate_matchings
from src.errors import GeneratorError

# (left monomial, right monomial) -> {result monomial: coefficient}
TripleConstants = dict[tuple[int, int], dict[int, Coefficient]]


class BasisVector(NamedTuple):
    """Monomial `mask` in the piece b(OH)a, with b = top and a = bottom (matching ids)."""
    top: int
    bottom: int
    mask: int


class ArcElement:
    """Finite linear combination of basis vectors of one arc algebra."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[dict] = None):
        self.n = n
        self.terms: dict[BasisVector, Coefficient] = {
            BasisVector(*k): c for k, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, n: int, bv: BasisVector, coeff: Coefficient = 1) -> "ArcElement":
        return cls(n, {bv: coeff})

    @classmethod
    def from_piece(cls, n: int, top: int, bottom: int, x: ExtElement) -> "ArcElement":
        return cls(n, {BasisVector(top, bottom, m): c for m, c in x.terms.items()})

    def _check_same(self, other: "ArcElement"):
        if self.n != other.n:
            raise GeneratorError(f"elements of OH^{self.n} and OH^{other.n} do not combine")

    def __add__(self, other: "ArcElement") -> "ArcElement":
        self._check_same(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return ArcElement(self.n, terms)

    def __neg__(self) -> "ArcElement":
        return ArcElement(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ArcElement") -> "ArcElement":
        return self + (-other)

    def scale(self, coeff: Coefficient) -> "ArcElement":
        return ArcElement(self.n, {k: coeff * c for k, c in self.terms.items()})

    def __rmul__(self, coeff: Coefficient) -> "ArcElement":
        return self.scale(coeff)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArcElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def pieces(self) -> list[tuple[int, int]]:
        return sorted({(k.top, k.bottom) for k in self.terms})

    def piece(self, top: int, bottom: int) -> ExtElement:
        """The component in b(OH)a as an exterior element on close(b, a)."""
        ms = enumerate_matchings(self.n)
        diagram = close(ms[top], ms[bottom])
        return ExtElement(diagram.circles,
                          {k.mask: c for k, c in self.terms.items()
                           if (k.top, k.bottom) == (top, bottom)},
                          self.n)

    def to_vector(self, index: dict[BasisVector, int]) -> list:
        out = [0] * len(index)
        for k, c in self.terms.items():
            out[index[k]] = c
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (top, bottom), ext in ((p, self.piece(*p)) for p in self.pieces()):
            parts.append(f"[{top}|{bottom}] {ext}")
        return " + ".join(parts)

    __repr__ = __str__


class ArcAlgebra(ABC):
    """
    Base class for the arc algebras on B^n.
    Subclasses implement `_compute_triple`.
    """

    NAME = "Arc algebra"
    GAUSSIAN = False      # coefficients in Z[i]

    def __init__(self, n: int):
        self.n = n
        self.matchings: tuple[Matching, ...] = enumerate_matchings(n)
        self._constants: dict[tuple[int, int, int], TripleConstants] = {}

    # ------------------------------------------------------------------ pieces
    def diagram(self, top: int, bottom: int) -> ClosedDiagram:
        return close(self.matchings[top], self.matchings[bottom])

    def ids(self) -> range:
        return range(len(self.matchings))

    def triples(self) -> Iterable[tuple[int, int, int]]:
        return itertools.product(self.ids(), repeat=3)

    def piece_basis(self, top: int, bottom: int) -> list[BasisVector]:
        m = len(self.diagram(top, bottom))
        return [BasisVector(top, bottom, mask) for mask in range(1 << m)]

    def basis(self) -> list[BasisVector]:
        out = []
        for top in self.ids():
            for bottom in self.ids():
                out.extend(self.piece_basis(top, bottom))
        return out

    def qdeg(self, bv: BasisVector) -> int:
        return 2 * popcount(bv.mask) - len(self.diagram(bv.top, bv.bottom)) + self.n

    def parity(self, x) -> int:
        """Word length mod 2 of a basis vector or homogeneous element."""
        if isinstance(x, BasisVector):
            return popcount(x.mask) % 2
        found = {popcount(k.mask) % 2 for k in x.terms}
        if len(found) != 1:
            raise GeneratorError(f"parity of an inhomogeneous element: {x}")
        return found.pop()

    def circle_names(self, bv: BasisVector) -> list[tuple[int, ...]]:
        diagram = self.diagram(bv.top, bv.bottom)
        return [diagram.circles[k] for k in bits(bv.mask)]

    # ------------------------------------------------------------------ elements
    def element(self, terms: dict) -> ArcElement:
        return ArcElement(self.n, terms)

    def zero(self) -> ArcElement:
        return ArcElement(self.n)

    def idempotent(self, a: int) -> ArcElement:
        return ArcElement.basis(self.n, BasisVector(a, a, 0))

    def one(self, top: int, bottom: int) -> ArcElement:
        """The element 1 of the piece W(top)bottom."""
        return ArcElement.basis(self.n, BasisVector(top, bottom, 0))

    def unit(self) -> ArcElement:
        return ArcElement(self.n, {BasisVector(a, a, 0): 1 for a in self.ids()})

    def circle(self, top: int, bottom: int, point: int) -> ArcElement:
        """Generator of the circle of W(top)bottom through `point` (1-based)."""
        k = self.diagram(top, bottom).circle_of[point]
        return ArcElement.basis(self.n, BasisVector(top, bottom, 1 << k))

    # ------------------------------------------------------------------ products
    @abstractmethod
    def _compute_triple(self, c: int, b: int, a: int) -> TripleConstants:
        """All products (c|b monomial) x (b|a monomial) -> monomials of (c|a)."""
        pass

    def constants(self, c: int, b: int, a: int) -> TripleConstants:
        key = (c, b, a)
        table = self._constants.get(key)
        if table is None:
            table = self._compute_triple(c, b, a)
            self._constants[key] = table
        return table

    def build_cache(self, progress_callback: Optional[Callable] = None):
        """Fill the structure-constant cache for every triple in a thread pool."""
        todo = [t for t in self.triples() if t not in self._constants]
        if not todo:
            return
        with ThreadPoolExecutor(max_workers=PARALLEL["threads"]) as pool:
            results = pool.map(lambda t: (t, self._compute_triple(*t)), todo)
            for i, (key, table) in enumerate(results):
                self._constants[key] = table
                if progress_callback:
                    progress_callback(self.NAME, i + 1, len(todo))

    def product_basis(self, x: BasisVector, y: BasisVector) -> dict[BasisVector, Coefficient]:
        if x.bottom != y.top:
            return {}
        table = self.constants(x.top, x.bottom, y.bottom)
        out = table.get((x.mask, y.mask), {})
        return {BasisVector(x.top, y.bottom, m): c for m, c in out.items()}

    def multiply(self, x: ArcElement, y: ArcElement) -> ArcElement:
        """Bilinear extension of the basis product."""
        x._check_same(y)
        terms: dict = {}
        by_top: dict[int, list] = {}
        for ky, cy in y.terms.items():
            by_top.setdefault(ky.top, []).append((ky, cy))
        for kx, cx in x.terms.items():
            for ky, cy in by_top.get(kx.bottom, ()):
                for k, c in self.product_basis(kx, ky).items():
                    terms[k] = terms.get(k, 0) + cx * cy * c
        return ArcElement(self.n, terms)

    def multiply_all(self, *factors: ArcElement) -> ArcElement:
        """Left-nested product ((x1 x2) x3) ..."""
        out = factors[0]
        for f in factors[1:]:
            out = self.multiply(out, f)
        return out
