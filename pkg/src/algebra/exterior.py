"""
Exterior Ring
Exact exterior algebra on an ordered set of circle generators, with
coefficients in the integers or the Gaussian integers.

Monomials are bitmasks: bit k set means generator k appears. Terms are
stored in a dict {mask: coefficient}, zero coefficients never stored.
"""
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence, Union

from src.errors import GeneratorError


@dataclass(frozen=True)
class GaussInt:
    """A Gaussian integer re + im*i."""
    re: int
    im: int = 0

    @staticmethod
    def lift(value) -> "GaussInt":
        if isinstance(value, GaussInt):
            return value
        return GaussInt(int(value), 0)

    @staticmethod
    def unit(power: int) -> "GaussInt":
        """i**power for power mod 4."""
        return (GaussInt(1), GaussInt(0, 1), GaussInt(-1), GaussInt(0, -1))[power % 4]

    def __add__(self, other):
        if not isinstance(other, (int, GaussInt)):
            return NotImplemented
        o = GaussInt.lift(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussInt.lift(other))

    def __rsub__(self, other):
        return GaussInt.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (int, GaussInt)):
            return NotImplemented
        o = GaussInt.lift(other)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        return f"({self.re}{self.im:+d}i)"


Coefficient = Union[int, GaussInt]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    """Indices of the set bits, ascending."""
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def wedge_sign(left: int, right: int) -> int:
    """
    Koszul sign of left ∧ right for disjoint masks: (-1)^(number of pairs
    i in left, j in right with i > j).
    """
    swaps = 0
    for j in bits(right):
        swaps += popcount(left >> (j + 1))
    return -1 if swaps & 1 else 1


def relabel(mask: int, mapping: Sequence[int]) -> Optional[tuple[int, int]]:
    """
    Send generator k to mapping[k] and renormalize.
    Returns (sign, new_mask), or None when two generators collide.
    """
    targets = [mapping[k] for k in bits(mask)]
    new_mask = 0
    for t in targets:
        if new_mask >> t & 1:
            return None
        new_mask |= 1 << t
    # sign of the permutation sorting `targets`
    inversions = 0
    for i in range(len(targets)):
        for j in range(i + 1, len(targets)):
            if targets[i] > targets[j]:
                inversions += 1
    return (-1 if inversions & 1 else 1), new_mask


class ExtElement:
    """
    Element of the exterior algebra on `generators` (an ordered tuple of
    labels), with a quantum degree shift `qdeg_offset`.

    Quantum degree of a monomial of word length k is 2k - m + qdeg_offset
    with m = len(generators).
    """

    __slots__ = ("generators", "terms", "qdeg_offset")

    def __init__(self, generators: Sequence[Hashable], terms: Optional[dict] = None,
                 qdeg_offset: int = 0):
        self.generators = tuple(generators)
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self.qdeg_offset = qdeg_offset

    # ------------------------------------------------------------------ builders
    @classmethod
    def one(cls, generators, qdeg_offset: int = 0) -> "ExtElement":
        return cls(generators, {0: 1}, qdeg_offset)

    @classmethod
    def zero(cls, generators, qdeg_offset: int = 0) -> "ExtElement":
        return cls(generators, {}, qdeg_offset)

    @classmethod
    def monomial(cls, generators, indices: Iterable[int], coeff: Coefficient = 1,
                 qdeg_offset: int = 0) -> "ExtElement":
        """Wedge of generators in the given order (sign normalized)."""
        mask = 0
        sign = 1
        for k in indices:
            if mask >> k & 1:
                return cls.zero(generators, qdeg_offset)
            sign *= wedge_sign(mask, 1 << k)
            mask |= 1 << k
        return cls(generators, {mask: sign * coeff}, qdeg_offset)

    @classmethod
    def gen(cls, generators, index: int, qdeg_offset: int = 0) -> "ExtElement":
        return cls(generators, {1 << index: 1}, qdeg_offset)

    def _like(self, terms: dict) -> "ExtElement":
        return ExtElement(self.generators, terms, self.qdeg_offset)

    def _check_same(self, other: "ExtElement"):
        if self.generators != other.generators:
            raise GeneratorError(f"generator sets differ: {self.generators} vs {other.generators}")

    # ------------------------------------------------------------------ ring ops
    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._check_same(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return self._like(terms)

    def __neg__(self) -> "ExtElement":
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def scale(self, coeff: Coefficient) -> "ExtElement":
        return self._like({m: coeff * c for m, c in self.terms.items()})

    def __rmul__(self, coeff: Coefficient) -> "ExtElement":
        return self.scale(coeff)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtElement):
            return NotImplemented
        return (self.generators == other.generators
                and self.qdeg_offset == other.qdeg_offset
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.generators, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def wedge(self, other: "ExtElement") -> "ExtElement":
        self._check_same(other)
        terms: dict = {}
        for mx, cx in self.terms.items():
            for my, cy in other.terms.items():
                if mx & my:
                    continue
                m = mx | my
                terms[m] = terms.get(m, 0) + wedge_sign(mx, my) * cx * cy
        return self._like(terms)

    def substitute(self, mapping: Union[Sequence[int], Callable[[int], int], dict],
                   generators: Optional[Sequence[Hashable]] = None) -> "ExtElement":
        """
        Apply a generator identification k -> mapping(k), landing on
        `generators` (defaults to the same set). Colliding generators kill
        the monomial.
        """
        target = tuple(generators) if generators is not None else self.generators
        size = len(self.generators)
        try:
            if callable(mapping):
                table = [mapping(k) for k in range(size)]
            else:
                table = [mapping[k] for k in range(size)]
        except (KeyError, IndexError) as e:
            raise GeneratorError(f"unmapped generator {e}") from e
        for t in table:
            if t is None or not 0 <= t < len(target):
                raise GeneratorError(f"generator mapped outside target: {t}")
        terms: dict = {}
        for m, c in self.terms.items():
            moved = relabel(m, table)
            if moved is None:
                continue
            sign, nm = moved
            terms[nm] = terms.get(nm, 0) + sign * c
        return ExtElement(target, terms, self.qdeg_offset)

    def contract(self, index: int) -> "ExtElement":
        """Interior product with the dual of generator `index`."""
        if not 0 <= index < len(self.generators):
            raise GeneratorError(f"unknown generator {index}")
        bit = 1 << index
        terms: dict = {}
        for m, c in self.terms.items():
            if not m & bit:
                continue
            sign = -1 if popcount(m & (bit - 1)) & 1 else 1
            terms[m ^ bit] = terms.get(m ^ bit, 0) + sign * c
        return self._like(terms)

    # ------------------------------------------------------------------ grading
    def word_lengths(self) -> set[int]:
        return {popcount(m) for m in self.terms}

    def qdeg(self) -> Optional[int]:
        """Quantum degree, or None when inhomogeneous (or zero)."""
        lengths = self.word_lengths()
        if len(lengths) != 1:
            return None
        k = lengths.pop()
        return 2 * k - len(self.generators) + self.qdeg_offset

    def parity(self) -> Optional[int]:
        lengths = {k % 2 for k in self.word_lengths()}
        if len(lengths) != 1:
            return None
        return lengths.pop()

    # ------------------------------------------------------------------ display
    def monomials(self) -> list[tuple[int, Coefficient]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.monomials():
            word = "^".join(f"g{k + 1}" for k in bits(m)) or "1"
            text = str(c)
            if word == "1":
                piece = text
            elif text == "1":
                piece = word
            elif text == "-1":
                piece = "-" + word
            else:
                piece = f"{text}·{word}"
            parts.append(piece)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for k in indices:
        mask |= 1 << k
    return mask
