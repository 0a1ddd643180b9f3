"""Tours: ordered room/artwork sequences, reconstruction and validation.

A tour is a sequence of ⟨vertex, artworks⟩ steps from an entrance to an
exit. Selected artworks are attached to the first occurrence of their room;
re-crossings carry an empty artwork set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from museplan.optrp.model import f_var, y_var
from museplan.optrp.problem import TourProblem

if TYPE_CHECKING:  # pragma: no cover
    from museplan.optrp.solver import IlpSolution


@dataclass(frozen=True)
class TourStep:
    vertex: str
    artworks: tuple[str, ...]


@dataclass(frozen=True)
class Tour:
    """Ordered walk with attached artworks and an exact time breakdown (deciminutes)."""

    steps: tuple[TourStep, ...]
    rooms_dm: int
    arcs_dm: int
    artworks_dm: int

    @property
    def total_dm(self) -> int:
        return self.rooms_dm + self.arcs_dm + self.artworks_dm

    @property
    def total_min(self) -> float:
        return self.total_dm / 10.0

    @property
    def visited_artworks(self) -> tuple[str, ...]:
        return tuple(p for step in self.steps for p in step.artworks)


def build_tour(walk: Sequence[str], selected: Iterable[str], problem: TourProblem) -> Tour:
    """Attach ``selected`` artworks to the first occurrence of their room in ``walk``."""
    room_of = problem.museum.room_of
    by_room: dict[str, list[str]] = {}
    for p in sorted(selected):
        by_room.setdefault(room_of[p], []).append(p)

    steps: list[TourStep] = []
    seen: set[str] = set()
    for v in walk:
        if v not in seen:
            seen.add(v)
            steps.append(TourStep(v, tuple(by_room.get(v, ()))))
        else:
            steps.append(TourStep(v, ()))

    t = problem.timing
    rooms_dm = sum(t.room_dm(v) for v in seen)
    arcs_dm = sum(t.arc_dm((a, b)) for a, b in zip(walk, walk[1:]) if a != b)
    artworks_dm = sum(t.artwork_dm(p) for ps in by_room.values() for p in ps)
    return Tour(steps=tuple(steps), rooms_dm=rooms_dm, arcs_dm=arcs_dm, artworks_dm=artworks_dm)


def reconstruct_tour(solution: "IlpSolution", problem: TourProblem) -> Tour:
    """Rebuild the walk from an optimal solution's arc and flow variables.

    Starting at the entrance with a used outgoing arc, repeatedly follow the
    unconsumed used arc with the smallest flow value (ties by target id).
    Flow values increase along the walk, so this replays it; a solution whose
    variables admit no such walk indicates a solver bug.
    """
    if solution.status != "optimal" or solution.assignment is None:
        raise ValueError("can only reconstruct from an optimal solution")
    museum = problem.museum
    assignment = solution.assignment

    used: dict[str, list[tuple[int, str]]] = {}
    n_arcs = 0
    for a in museum.arcs:
        if assignment.get(y_var(a), 0) == 1:
            used.setdefault(a[0], []).append((assignment[f_var(a)], a[1]))
            n_arcs += 1
    for options in used.values():
        options.sort(reverse=True)  # pop() takes the smallest (f, target)

    starts = [e for e in sorted(museum.entrances) if e in used]
    if len(starts) != 1:
        raise RuntimeError(f"solution inconsistent: {len(starts)} entrances with used arcs")
    walk = [starts[0]]
    consumed = 0
    while used.get(walk[-1]):
        _, nxt = used[walk[-1]].pop()
        walk.append(nxt)
        consumed += 1
    if consumed != n_arcs:
        raise RuntimeError("solution inconsistent: walk does not consume every used arc")
    if walk[-1] not in museum.exits:
        raise RuntimeError("solution inconsistent: walk does not end at an exit")
    return build_tour(walk, solution.selected, problem)


def validate_tour(tour: Tour, problem: TourProblem) -> list[str]:
    """Check the four tour conditions plus artwork placement and I/R compliance.

    Returns a list of violation messages; empty iff the tour is valid.
    """
    issues: list[str] = []
    museum = problem.museum
    if not tour.steps:
        return ["tour is empty"]

    if tour.steps[0].vertex not in museum.entrances:
        issues.append(f"tour starts at {tour.steps[0].vertex}, not an entrance")
    if tour.steps[-1].vertex not in museum.exits:
        issues.append(f"tour ends at {tour.steps[-1].vertex}, not an exit")

    for s1, s2 in zip(tour.steps, tour.steps[1:]):
        if s1.vertex != s2.vertex and (s1.vertex, s2.vertex) not in museum.arcs:
            issues.append(f"no arc {s1.vertex}->{s2.vertex}")

    room_of = museum.room_of
    visited: set[str] = set()
    for step in tour.steps:
        for p in step.artworks:
            if p not in room_of:
                issues.append(f"unknown artwork {p}")
            elif room_of[p] != step.vertex:
                issues.append(f"artwork {p} listed in {step.vertex}, hangs in {room_of[p]}")
            if p in visited:
                issues.append(f"artwork {p} appears twice")
            visited.add(p)

    t = problem.timing
    vertices = [s.vertex for s in tour.steps]
    known = [v for v in vertices if v in museum.vertices]
    total = (sum(t.room_dm(v) for v in set(known))
             + sum(t.arc_dm((a, b)) for a, b in zip(vertices, vertices[1:])
                   if (a, b) in museum.arcs)
             + sum(t.artwork_dm(p) for p in visited if p in room_of))
    if total > problem.t_max_dm:
        issues.append(f"tour takes {total / 10:.1f} min, budget is {problem.t_max_min:.1f} min")

    missing = problem.include - visited
    if missing:
        issues.append(f"included artworks not visited: {sorted(missing)}")
    banned = problem.exclude & visited
    if banned:
        issues.append(f"excluded artworks visited: {sorted(banned)}")
    return issues
