"""Tour planning problem definition."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from museplan.corpus import Museum, TimingModel


@dataclass(frozen=True, eq=False)
class TourProblem:
    """One planning instance: museum + timing + ⟨include, exclude, u, t_max⟩.

    ``include`` artworks must appear in the tour, ``exclude`` artworks must
    not; ``u`` maps every artwork to its interest (missing ids count as 0);
    ``t_max_min`` is the visitor's time budget in minutes.
    """

    museum: Museum
    timing: TimingModel
    u: Mapping[str, float]
    t_max_min: float
    include: frozenset[str] = field(default_factory=frozenset)
    exclude: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        ids = {a.id for a in self.museum.artworks}
        unknown = (self.include | self.exclude) - ids
        if unknown:
            raise ValueError(f"include/exclude reference unknown artworks: {sorted(unknown)}")
        overlap = self.include & self.exclude
        if overlap:
            raise ValueError(f"include and exclude overlap: {sorted(overlap)}")
        if not (self.t_max_min > 0 and math.isfinite(self.t_max_min)):
            raise ValueError(f"t_max must be positive and finite, got {self.t_max_min!r}")
        if abs(self.t_max_min * 10 - round(self.t_max_min * 10)) > 1e-9:
            raise ValueError("t_max must be a multiple of 0.1 min")
        for pid, value in self.u.items():
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"u[{pid!r}] must be finite and >= 0, got {value!r}")

    @property
    def t_max_dm(self) -> int:
        return round(self.t_max_min * 10)

    def utility(self, artwork_id: str) -> float:
        return float(self.u.get(artwork_id, 0.0))
