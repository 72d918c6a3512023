"""
Graded Ranks
Rank per quantum degree, printed as a polynomial in q.
"""
from dataclasses import dataclass, field

import pandas as pd


@dataclass
class GradedRank:
    ranks: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_degrees(cls, degrees) -> "GradedRank":
        out: dict[int, int] = {}
        for d in degrees:
            out[d] = out.get(d, 0) + 1
        return cls(out)

    def add(self, degree: int, rank: int):
        if rank:
            self.ranks[degree] = self.ranks.get(degree, 0) + rank

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def shifted(self, by: int) -> "GradedRank":
        return GradedRank({d + by: r for d, r in self.ranks.items()})

    def __getitem__(self, degree: int) -> int:
        return self.ranks.get(degree, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedRank):
            return {d: r for d, r in self.ranks.items() if r} == \
                {d: r for d, r in other.ranks.items() if r}
        return NotImplemented

    def __str__(self) -> str:
        parts = []
        for d in sorted(self.ranks):
            r = self.ranks[d]
            if not r:
                continue
            if d == 0:
                parts.append(str(r))
            else:
                mono = "q" if d == 1 else f"q^{d}"
                parts.append(mono if r == 1 else f"{r}{mono}")
        return "+".join(parts) or "0"

    def to_frame(self) -> pd.DataFrame:
        degrees = sorted(d for d, r in self.ranks.items() if r)
        return pd.DataFrame({'qdeg': degrees, 'rank': [self.ranks[d] for d in degrees]})

    def to_dict(self) -> dict:
        return {str(d): self.ranks[d] for d in sorted(self.ranks) if self.ranks[d]}
