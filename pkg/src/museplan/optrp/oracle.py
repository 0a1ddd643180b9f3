"""Brute-force reference optimizer for small instances.

Enumerates every entrance→exit walk that uses each directed arc at most
once, then solves an exact 0/1 knapsack over the artworks reachable from
each walk's covered rooms (cheapest walk per distinct covered set; identical
coverage with more walking can never win). Deliberately independent of the
branch-and-bound solver: different search, different data structures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from museplan.optrp.problem import TourProblem
from museplan.tour import Tour, build_tour

Arc = tuple[str, str]

MAX_ORACLE_ROOMS = 6
MAX_ORACLE_ARTWORKS = 10


@dataclass(frozen=True)
class OracleResult:
    status: str  # "optimal" | "infeasible"
    objective: float | None = None
    selected: tuple[str, ...] = ()
    walk: tuple[str, ...] = ()
    tour: Tour | None = None
    walks_enumerated: int = 0


def brute_force_oracle(problem: TourProblem, *, max_rooms: int = MAX_ORACLE_ROOMS,
                       max_artworks: int = MAX_ORACLE_ARTWORKS,
                       max_walks: int = 500_000) -> OracleResult:
    """Exhaustively compute the optimum; refuses instances beyond desk scale."""
    museum = problem.museum
    timing = problem.timing
    if len(museum.rooms) > max_rooms:
        raise ValueError(f"instance too large for the oracle: {len(museum.rooms)} rooms")
    if len(museum.artworks) > max_artworks:
        raise ValueError(f"instance too large for the oracle: {len(museum.artworks)} artworks")

    succ: dict[str, list[Arc]] = {v: [] for v in museum.vertices}
    for a in sorted(museum.arcs):
        succ[a[0]].append(a)
    room_dm = {v: timing.room_dm(v) for v in museum.vertices}
    arc_dm = {a: timing.arc_dm(a) for a in museum.arcs}

    # Cheapest walk (rooms charged once + arcs) per distinct covered vertex set.
    best_walks: dict[frozenset[str], tuple[int, tuple[str, ...]]] = {}
    walk_count = 0

    def extend(v: str, used: set[Arc], visited: list[str], arc_cost: int) -> None:
        nonlocal walk_count
        if v in museum.exits:
            walk_count += 1
            if walk_count > max_walks:
                raise ValueError(f"instance too large for the oracle: > {max_walks} walks")
            touched = frozenset(visited)
            cost = arc_cost + sum(room_dm[w] for w in touched)
            candidate = (cost, tuple(visited))
            if touched not in best_walks or candidate < best_walks[touched]:
                best_walks[touched] = candidate
            return
        for a in succ[v]:
            if a in used:
                continue
            used.add(a)
            visited.append(a[1])
            extend(a[1], used, visited, arc_cost + arc_dm[a])
            visited.pop()
            used.remove(a)

    for e in sorted(museum.entrances):
        extend(e, set(), [e], 0)

    room_of = museum.room_of
    t_dm = {a.id: timing.artwork_dm(a.id) for a in museum.artworks}
    u = {a.id: problem.utility(a.id) for a in museum.artworks}
    include = sorted(problem.include)

    best: tuple[float, tuple[str, ...], tuple[str, ...]] | None = None
    for touched in sorted(best_walks, key=lambda s: tuple(sorted(s))):
        walk_cost, walk = best_walks[touched]
        if any(room_of[p] not in touched for p in include):
            continue
        capacity = problem.t_max_dm - walk_cost - sum(t_dm[p] for p in include)
        if capacity < 0:
            continue
        free = [(a.id, t_dm[a.id], u[a.id]) for a in museum.artworks
                if a.id not in problem.include and a.id not in problem.exclude
                and room_of[a.id] in touched]
        _, picked = _knapsack(free, capacity)
        selected = tuple(sorted(include + picked))
        objective = math.fsum(u[p] for p in selected)
        if best is None or objective > best[0]:
            best = (objective, selected, walk)

    if best is None:
        return OracleResult(status="infeasible", walks_enumerated=walk_count)
    objective, selected, walk = best
    tour = build_tour(walk, selected, problem)
    return OracleResult(status="optimal", objective=objective, selected=selected,
                        walk=walk, tour=tour, walks_enumerated=walk_count)


def _knapsack(items: list[tuple[str, int, float]], capacity: int) -> tuple[float, list[str]]:
    """Exact 0/1 knapsack (DP over integer weights, float values)."""
    capacity = min(capacity, sum(w for _, w, _ in items))
    dp = [0.0] * (capacity + 1)
    take = [bytearray(capacity + 1) for _ in items]
    for i, (_pid, w, val) in enumerate(items):
        for c in range(capacity, w - 1, -1):
            alt = dp[c - w] + val
            if alt > dp[c]:
                dp[c] = alt
                take[i][c] = 1
    chosen: list[str] = []
    c = capacity
    for i in range(len(items) - 1, -1, -1):
        if take[i][c]:
            chosen.append(items[i][0])
            c -= items[i][1]
    return dp[capacity], chosen
