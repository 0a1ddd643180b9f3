"""Exact solver: depth-first branch-and-bound over artwork variables.

Only the artwork variables carry objective weight; the walk variables are
determined by which rooms the chosen artworks require. The search therefore
branches on artworks in descending u/t order (include branch first), keeps
the exact minimum walk cost for the rooms required so far, and bounds each
node by current utility plus a fractional knapsack over the undecided
artworks with capacity budget − artwork time so far − walk cost so far.
The bound is admissible because walk cost is monotone in the required-room
set, so the search is exact up to a 1e-11 strict-improvement tolerance
(utilities are floats; all time arithmetic is integral).

Zero-utility artworks outside the include set are fixed to 0 up front: they
never change the objective, and fixing them makes the reported optimum the
canonical minimal one. Determinism comes from sorted branching order and
first-found-best tie-breaking; there is no randomness anywhere.
"""

from __future__ import annotations

import math
import time

import numpy as np
from dataclasses import dataclass, field

from museplan.optrp.model import IlpModel, f_var, x_var, y_var, z_var
from museplan.optrp.walks import CoveredWalk, WalkIndexCapExceeded, index_for

_EPS = 1e-11

DEFAULT_NODE_CAP = 2_000_000

# Branch-and-bound nodes to spend before switching to the covered-set scan.
_FALLBACK_NODES = 300_000


class _CapExceeded(Exception):
    pass


@dataclass(frozen=True)
class IlpSolution:
    """Outcome of one exact solve."""

    status: str  # "optimal" | "infeasible" | "cap_exceeded"
    objective: float | None = None
    assignment: dict[str, int] | None = None
    selected: tuple[str, ...] = ()
    walk: tuple[str, ...] = ()
    infeasible_reason: str | None = None
    nodes: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def solve_exact(model: IlpModel, *, node_cap: int = DEFAULT_NODE_CAP,
                time_cap_s: float | None = None) -> IlpSolution:
    """Solve to proven optimality, or report infeasible / cap exceeded.

    Same model in, same solution out: branching and tie-breaking are fixed.
    A hit node or time cap yields status "cap_exceeded", never a silently
    suboptimal answer labeled optimal.
    """
    problem = model.problem
    museum, timing = problem.museum, problem.timing

    try:
        index = index_for(museum, timing)
    except WalkIndexCapExceeded:
        return IlpSolution(status="cap_exceeded")

    budget = problem.t_max_dm
    room_of = museum.room_of
    t_dm = {a.id: timing.artwork_dm(a.id) for a in museum.artworks}
    u = {a.id: problem.utility(a.id) for a in museum.artworks}

    crossing = index.min_crossing()
    if crossing is None:
        return IlpSolution(status="infeasible", infeasible_reason="no-entrance-exit-walk")
    if crossing.cost_dm > budget:
        return IlpSolution(status="infeasible", infeasible_reason="budget-below-min-crossing")

    include = sorted(problem.include)
    base_rooms = frozenset(room_of[p] for p in include)
    base_cover = index.cover(base_rooms)
    if base_cover is None:
        return IlpSolution(status="infeasible", infeasible_reason="include-unreachable")
    base_time = sum(t_dm[p] for p in include)
    if base_cover.cost_dm + base_time > budget:
        return IlpSolution(status="infeasible", infeasible_reason="budget-below-includes")

    free = [a.id for a in museum.artworks
            if a.id not in problem.include and a.id not in problem.exclude and u[a.id] > 0.0]
    free.sort(key=lambda p: (-(u[p] / t_dm[p]) if t_dm[p] > 0 else -math.inf, p))
    n = len(free)
    ft = [t_dm[p] for p in free]
    fu = [u[p] for p in free]
    # Artworks with identical utility, time and room are interchangeable; an
    # exchange argument keeps an optimum in which each such class is picked
    # by id order, so after skipping one member the rest may be skipped too.
    class_ids: dict[tuple[float, int, str], int] = {}
    class_of = []
    for p in free:
        key = (u[p], t_dm[p], room_of[p])
        class_of.append(class_ids.setdefault(key, len(class_ids)))
    blocked = [False] * len(class_ids)
    # Exact suffix-knapsack table: best[i][c] = max utility from items i.. with
    # total artwork time <= c, walk costs ignored. Tighter than the fractional
    # relaxation (no fractional slack on plateaus of equal utilities) and still
    # admissible, since walk cost only grows as rooms are added.
    cap_axis = min(budget, sum(ft))
    suffix_best = np.zeros((n + 1, cap_axis + 1))
    for i in range(n - 1, -1, -1):
        nxt = suffix_best[i + 1]
        cur = nxt.copy()
        w = ft[i]
        if w <= cap_axis:
            np.maximum(cur[w:], nxt[:cap_axis + 1 - w] + fu[i], out=cur[w:])
        suffix_best[i] = cur

    def knapsack_bound(idx: int, cap_dm: int) -> float:
        return float(suffix_best[idx][cap_dm if cap_dm < cap_axis else cap_axis])

    best_obj = math.fsum(u[p] for p in include)
    best_sel: tuple[str, ...] = tuple(include)
    best_cover: CoveredWalk = base_cover
    chosen: list[str] = []
    nodes = 0
    stage1_cap = min(node_cap, _FALLBACK_NODES)
    deadline = time.monotonic() + time_cap_s if time_cap_s is not None else None

    import sys
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * n + 100))

    def visit(idx: int, used_dm: int, util: float,
              rooms: frozenset[str], cover: CoveredWalk) -> None:
        nonlocal nodes, best_obj, best_sel, best_cover
        nodes += 1
        if nodes > stage1_cap:
            raise _CapExceeded
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise _CapExceeded
        if util + knapsack_bound(idx, budget - used_dm - cover.cost_dm) <= best_obj + _EPS:
            return
        if idx == n:
            best_obj = math.fsum(u[p] for p in sorted(include + chosen))
            best_sel = tuple(sorted(include + chosen))
            best_cover = cover
            return
        p = free[idx]
        ci = class_of[idx]
        if not blocked[ci]:
            r = room_of[p]
            if r in rooms:
                rooms_in, cover_in = rooms, cover
            else:
                rooms_in = rooms | {r}
                cover_in = index.cover(rooms_in)
            if cover_in is not None and used_dm + ft[idx] + cover_in.cost_dm <= budget:
                chosen.append(p)
                visit(idx + 1, used_dm + ft[idx], util + fu[idx], rooms_in, cover_in)
                chosen.pop()
            blocked[ci] = True
            visit(idx + 1, used_dm, util, rooms, cover)
            blocked[ci] = False
        else:
            visit(idx + 1, used_dm, util, rooms, cover)

    capped = False
    try:
        visit(0, base_time, best_obj, base_rooms, base_cover)
    except _CapExceeded:
        capped = True
    finally:
        sys.setrecursionlimit(old_limit)

    if capped:
        if deadline is not None and time.monotonic() > deadline:
            return IlpSolution(status="cap_exceeded", nodes=nodes)
        if nodes >= node_cap:
            return IlpSolution(status="cap_exceeded", nodes=nodes)
        # Covered-set scan: every feasible tour touches one of the index's
        # achievable vertex sets, and with the set fixed the rest is a pure
        # knapsack over the artworks it exposes. Exact and plateau-free.
        scan = _scan_covered_sets(index, problem, free, base_rooms, base_time,
                                  node_cap - nodes)
        if scan is None:
            return IlpSolution(status="cap_exceeded", nodes=node_cap)
        scan_obj, scan_sel, scan_cover, scanned = scan
        nodes += scanned
        if scan_obj > best_obj:
            best_obj, best_sel, best_cover = scan_obj, scan_sel, scan_cover

    walk = index.walk_vertices(best_cover)
    assignment = _assignment(model, best_sel, best_cover, walk)
    violations = model.verify(assignment)
    if violations:  # pragma: no cover - guards against solver bugs
        raise RuntimeError(f"internal error: solution violates model: {violations[:5]}")
    return IlpSolution(status="optimal", objective=best_obj, assignment=assignment,
                       selected=best_sel, walk=tuple(walk), nodes=nodes)


def _scan_covered_sets(index, problem, free: list[str], base_rooms: frozenset[str],
                       base_time: int, node_budget: int
                       ) -> tuple[float, tuple[str, ...], CoveredWalk, int] | None:
    """Exact optimum via one 0/1 knapsack per achievable covered vertex set.

    Returns None if the entry scan would exceed ``node_budget``.
    """
    if len(index.entries) > node_budget:
        return None
    museum, timing = problem.museum, problem.timing
    room_of = museum.room_of
    u = {p: problem.utility(p) for p in free}
    t_dm = {p: timing.artwork_dm(p) for p in free}
    include = sorted(problem.include)
    budget = problem.t_max_dm

    best: tuple[float, tuple[str, ...], CoveredWalk] | None = None
    for touched, cost, arcs in index.entries:
        if not base_rooms <= touched:
            continue
        capacity = budget - cost - base_time
        if capacity < 0:
            continue
        items = [p for p in free if room_of[p] in touched]
        value, picked = _knapsack(
            [t_dm[p] for p in items], [u[p] for p in items], capacity)
        selected = tuple(sorted(include + [items[i] for i in picked]))
        objective = math.fsum(problem.utility(p) for p in selected)
        if best is None or objective > best[0]:
            best = (objective, selected, CoveredWalk(touched=touched, cost_dm=cost, arcs=arcs))
    if best is None:  # pragma: no cover - preamble guarantees one feasible entry
        raise RuntimeError("internal error: no feasible covered set in scan")
    return best[0], best[1], best[2], len(index.entries)


def _knapsack(weights: list[int], values: list[float], capacity: int
              ) -> tuple[float, list[int]]:
    """Exact 0/1 knapsack; returns (value, chosen indices). Ties prefer skipping."""
    capacity = min(capacity, sum(weights))
    n = len(weights)
    if n == 0 or capacity < 0:
        return 0.0, []
    dp = np.zeros(capacity + 1)
    take = np.zeros((n, capacity + 1), dtype=bool)
    for i, (w, v) in enumerate(zip(weights, values)):
        if w > capacity:
            continue
        cand = dp[:capacity + 1 - w] + v
        np.greater(cand, dp[w:], out=take[i, w:])
        np.maximum(dp[w:], cand, out=dp[w:])
    chosen: list[int] = []
    c = capacity
    for i in range(n - 1, -1, -1):
        if take[i, c]:
            chosen.append(i)
            c -= weights[i]
    chosen.reverse()
    return float(dp[capacity]), chosen


def _assignment(model: IlpModel, selected: tuple[str, ...],
                cover: CoveredWalk, walk: list[str]) -> dict[str, int]:
    museum = model.problem.museum
    assignment = {var: 0 for var in model.variables}
    for p in selected:
        assignment[x_var(p)] = 1
    for a in cover.arcs:
        assignment[y_var(a)] = 1
    for v in cover.touched:
        assignment[z_var(v)] = 1
    # f on the k-th used arc = 1 + distinct internal vertices crossed before it.
    internal = museum.vertices - museum.entrances - museum.exits
    seen: set[str] = set()
    count = 0
    for i, arc in enumerate(zip(walk, walk[1:])):
        if i > 0:
            v = walk[i]
            if v in internal and v not in seen:
                seen.add(v)
                count += 1
        assignment[f_var(arc)] = 1 + count
    return assignment
