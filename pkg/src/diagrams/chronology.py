"""
Chronologies
For every triple (c,b,a) of matchings, the order in which the arcs of b
are contracted and the orientation of each split. A ChoiceC bundles one
chronology per triple.
"""
import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from config import SIZE_GUARDS
from src.diagrams.cobordism import ContractionStep, Orientation, compile_plan
from src.diagrams.matchings import (Matching, StackedDiagram, close, enumerate_matchings,
                                    matching_id)
from src.errors import DiagramError, SizeError
from src.report import CheckReport

Triple = tuple[Matching, Matching, Matching]


@dataclass(frozen=True)
class Chronology:
    """Contraction order for C_cba: the steps run over the arcs of b."""
    triple: Triple
    steps: tuple[ContractionStep, ...]

    @property
    def middle(self) -> Matching:
        return self.triple[1]

    def stacked(self) -> StackedDiagram:
        c, b, a = self.triple
        return StackedDiagram((close(c, b), close(b, a)))

    def plan(self):
        return compile_plan(self.stacked(), 0, self.steps)

    def to_dict(self) -> dict:
        return {
            'triple': [matching_id(m) for m in self.triple],
            'steps': [s.to_dict() for s in self.steps],
        }

    @classmethod
    def from_dict(cls, n: int, data: dict) -> "Chronology":
        ms = enumerate_matchings(n)
        try:
            triple = tuple(ms[k] for k in data['triple'])
            steps = tuple(ContractionStep(tuple(s['arc']), Orientation(s.get('or', 'LR')))
                          for s in data['steps'])
        except (KeyError, IndexError, ValueError) as e:
            raise DiagramError(f"bad chronology record {data}: {e}") from e
        return cls(triple, steps)


def canonical_chronology(triple: Triple) -> Chronology:
    """Arcs of b left to right, every split oriented left to right."""
    b = triple[1]
    return Chronology(triple, tuple(ContractionStep(arc) for arc in b.arcs))


def validate(ch: Chronology) -> CheckReport:
    """
    Nesting rule: two side-by-side arcs sitting inside a common arc may not
    both be contracted before it.
    """
    b = ch.middle
    arcs = [s.arc for s in ch.steps]
    if sorted(arcs) != list(b.arcs):
        raise DiagramError(f"steps {arcs} are not a permutation of {b.arcs}")
    report = CheckReport("chronology nesting", True)
    position = {arc: k for k, arc in enumerate(arcs)}
    for alpha in b.arcs:
        inside = [beta for beta in b.arcs if b.contains(alpha, beta)]
        for beta1, beta2 in itertools.combinations(inside, 2):
            if b.contains(beta1, beta2) or b.contains(beta2, beta1):
                continue
            if position[beta1] < position[alpha] and position[beta2] < position[alpha]:
                return report.fail(f"{beta1} and {beta2} contracted before surrounding {alpha}",
                                   alpha=list(alpha), beta1=list(beta1), beta2=list(beta2))
    return report


def enumerate_choices(n: int, triple: Triple) -> list[Chronology]:
    """Every valid order, times every orientation of the steps that split."""
    if n > SIZE_GUARDS["max_n_choices"]:
        raise SizeError(f"chronology enumeration limited to n <= {SIZE_GUARDS['max_n_choices']}")
    b = triple[1]
    out = []
    for order in itertools.permutations(b.arcs):
        plain = Chronology(triple, tuple(ContractionStep(arc) for arc in order))
        if not validate(plain):
            continue
        splits = plain.plan().split_positions()
        for flips in itertools.product((False, True), repeat=len(splits)):
            steps = list(plain.steps)
            for pos, flip in zip(splits, flips):
                if flip:
                    steps[pos] = ContractionStep(steps[pos].arc, Orientation.RIGHT_TO_LEFT)
            out.append(Chronology(triple, tuple(steps)))
    return out


@dataclass(frozen=True)
class ChoiceC:
    """One chronology per triple (c,b,a), keyed by matching ids."""
    n: int
    chronologies: dict = field(hash=False, compare=True)

    def __hash__(self):
        return hash((self.n, tuple(sorted((k, v.steps) for k, v in self.chronologies.items()))))

    def chronology(self, c: Matching, b: Matching, a: Matching) -> Chronology:
        return self.chronologies[(matching_id(c), matching_id(b), matching_id(a))]

    def replace(self, *chronologies: Chronology) -> "ChoiceC":
        table = dict(self.chronologies)
        for ch in chronologies:
            table[tuple(matching_id(m) for m in ch.triple)] = ch
        return ChoiceC(self.n, table)

    def to_dict(self) -> dict:
        return {'n': self.n,
                'chronologies': [self.chronologies[k].to_dict() for k in sorted(self.chronologies)]}

    def is_canonical(self) -> bool:
        return self == canonical_choice(self.n)


def _triples(n: int) -> Iterator[Triple]:
    ms = enumerate_matchings(n)
    return itertools.product(ms, ms, ms)


@lru_cache(maxsize=None)
def canonical_choice(n: int) -> ChoiceC:
    table = {}
    for triple in _triples(n):
        table[tuple(matching_id(m) for m in triple)] = canonical_chronology(triple)
    return ChoiceC(n, table)


def reversed_choice(n: int) -> ChoiceC:
    """Canonical orders with every split orientation reversed."""
    base = canonical_choice(n)
    table = {}
    for key, ch in base.chronologies.items():
        splits = set(ch.plan().split_positions())
        steps = tuple(ContractionStep(s.arc, s.orientation.reversed()) if k in splits else s
                      for k, s in enumerate(ch.steps))
        table[key] = Chronology(ch.triple, steps)
    return ChoiceC(n, table)


def enumerate_all_choices(n: int) -> Iterator[ChoiceC]:
    """
    All choices up to triples without splits: such triples are pure merges
    and every chronology of them gives the same map, so they keep the
    canonical chronology.
    """
    if n > 2:
        raise SizeError("full choice enumeration is limited to n <= 2")
    base = canonical_choice(n)
    keys, options = [], []
    for key, ch in sorted(base.chronologies.items()):
        if ch.plan().split_count:
            keys.append(key)
            options.append(enumerate_choices(n, ch.triple))
    for combo in itertools.product(*options):
        table = dict(base.chronologies)
        table.update(zip(keys, combo))
        yield ChoiceC(n, table)


def load_choice(n: int, path: Optional[str]) -> ChoiceC:
    """'canonical', 'reversed', or a JSON file overriding canonical triples."""
    if path in (None, "canonical"):
        return canonical_choice(n)
    if path == "reversed":
        return reversed_choice(n)
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DiagramError(f"cannot read choice file {path}: {e}") from e
    records = data.get('chronologies', data) if isinstance(data, dict) else data
    chronologies = [Chronology.from_dict(n, r) for r in records]
    for ch in chronologies:
        report = validate(ch)
        if not report:
            raise DiagramError(f"invalid chronology in {path}: {report.reasons[-1]}")
    return canonical_choice(n).replace(*chronologies)
