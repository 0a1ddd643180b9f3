"""Visitor preference modeling: characteristic vectors and interest functions.

An artwork and a visitor are both represented as nonnegative vectors in a
shared characteristic space; the visitor's interest u(p) in an artwork is
the cosine similarity of the two vectors. Four ready-made constructions:

* f1 - uniform: every artwork gets u = 1 (no preferences at all).
* f2 - intrinsic: u equals the artwork's textual-energy score. (A literal
  1-D cosine would always be 1 for positive scalars, so f2 is defined
  directly as the score; this matches its intended non-constant behaviour.)
* f3 - artists: one characteristic per artist in the museum; the artwork is
  one-hot at its artist, the visitor multi-hot at the selected artists.
* f4 - combined: energy block concatenated with the artist block scaled by
  ``artist_weight`` (default 10, favouring explicit preferences).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from museplan.corpus import Museum
from museplan.textenergy import EnergyTable

INTEREST_KINDS = ("f1", "f2", "f3", "f4")


@dataclass(frozen=True)
class CharacteristicSpace:
    """Ordered, unique characteristic identifiers."""

    characteristics: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.characteristics)) != len(self.characteristics):
            raise ValueError("characteristic identifiers must be unique")

    @property
    def dimension(self) -> int:
        return len(self.characteristics)


@dataclass(frozen=True)
class InterestVector:
    """Nonnegative finite vector in a CharacteristicSpace."""

    space: CharacteristicSpace
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.space.dimension:
            raise ValueError("vector length must equal the space dimension")
        for v in self.values:
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"vector entries must be finite and >= 0, got {v!r}")


def cosine_similarity(a: InterestVector, b: InterestVector) -> float:
    """Cosine of the angle between a and b, in [0, 1] for nonnegative vectors.

    A zero vector means "interested in nothing" / "matching nothing", so the
    0/0 case is defined as 0.
    """
    if a.space != b.space:
        raise ValueError("vectors live in different characteristic spaces")
    dot = sum(x * y for x, y in zip(a.values, b.values))
    norm_sq = sum(x * x for x in a.values) * sum(y * y for y in b.values)
    if norm_sq == 0.0:
        return 0.0
    return min(dot / math.sqrt(norm_sq), 1.0)


@dataclass(frozen=True)
class InterestFunctionSpec:
    """Which interest function to build, and its inputs."""

    kind: str
    selected_artists: frozenset[str] = field(default_factory=frozenset)
    energy: EnergyTable | None = None
    artist_weight: float = 10.0

    def __post_init__(self) -> None:
        if self.kind not in INTEREST_KINDS:
            raise ValueError(f"kind must be one of {INTEREST_KINDS}, got {self.kind!r}")
        if self.kind in ("f3", "f4") and not self.selected_artists:
            raise ValueError(f"{self.kind} requires a non-empty artist selection")
        if self.kind in ("f2", "f4") and self.energy is None:
            raise ValueError(f"{self.kind} requires an energy table")
        if not (self.artist_weight > 0 and math.isfinite(self.artist_weight)):
            raise ValueError("artist_weight must be positive and finite")


def artist_space(museum: Museum) -> CharacteristicSpace:
    """One characteristic per museum artist, lexicographic order."""
    return CharacteristicSpace(museum.artists)


def build_interest(spec: InterestFunctionSpec, museum: Museum,
                   warn: list[str] | None = None) -> dict[str, float]:
    """Build u: artwork id -> interest in [0, 1] for every artwork of the museum.

    ``warn`` collects notes about selected artists absent from the museum;
    if none of the selected artists exist, the preference is empty and an
    error is raised.
    """
    if spec.kind == "f1":
        return {a.id: 1.0 for a in museum.artworks}

    if spec.kind == "f2":
        assert spec.energy is not None
        return {a.id: float(spec.energy.score.get(a.id, 0.0)) for a in museum.artworks}

    present = set(museum.artists)
    missing = sorted(spec.selected_artists - present)
    selected = spec.selected_artists & present
    if missing and warn is not None:
        warn.append(f"selected artists not in museum: {', '.join(missing)}")
    if not selected:
        raise ValueError("empty preference: none of the selected artists are in the museum")

    space = artist_space(museum)
    visitor_block = tuple(1.0 if c in selected else 0.0 for c in space.characteristics)

    if spec.kind == "f3":
        visitor = InterestVector(space, visitor_block)
        u: dict[str, float] = {}
        for a in museum.artworks:
            row = tuple(1.0 if c == a.artist else 0.0 for c in space.characteristics)
            u[a.id] = cosine_similarity(InterestVector(space, row), visitor)
        return u

    # f4: (energy score) ∥ weight·(artist one-hot) against (1) ∥ weight·(selection).
    assert spec.energy is not None
    w = spec.artist_weight
    combined = CharacteristicSpace(("energy",) + space.characteristics)
    visitor = InterestVector(combined, (1.0,) + tuple(w * v for v in visitor_block))
    u = {}
    for a in museum.artworks:
        score = float(spec.energy.score.get(a.id, 0.0))
        row = (score,) + tuple(w if c == a.artist else 0.0 for c in space.characteristics)
        u[a.id] = cosine_similarity(InterestVector(combined, row), visitor)
    return u
