"""Minimum-cost covering walks over the museum graph.

The solver needs, for a set of required rooms, the cheapest entrance→exit
walk that crosses all of them, where each directed arc may be used at most
once, every touched room is charged its crossing time once, and every used
arc its crossing time.

Arc sets that support such a walk are exactly the sets satisfying the
directed Euler-path degree conditions (one entrance with a single outgoing
used arc, one exit with a single incoming used arc, balance elsewhere) and
weak connectivity; any such set decomposes into one simple entrance→exit
path plus arc-disjoint simple cycles. The index enumerates those
combinations once per museum, records the cheapest arc set for every
achievable touched-vertex set, and answers coverage queries by scanning for
the cheapest superset. Enumeration is capped; hitting a cap surfaces as the
solver's "cap exceeded" status rather than a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from museplan.corpus import Museum, TimingModel

Arc = tuple[str, str]


class WalkIndexCapExceeded(RuntimeError):
    """Walk enumeration exceeded its combination cap (graph beyond desk scale)."""


@dataclass(frozen=True)
class CoveredWalk:
    """Cheapest known walk support touching exactly ``touched``."""

    touched: frozenset[str]
    cost_dm: int
    arcs: tuple[Arc, ...]


def euler_walk(arcs: Iterable[Arc], start: str) -> list[str]:
    """Deterministic Euler path over ``arcs`` starting at ``start`` (Hierholzer).

    Assumes the arc set satisfies the Euler-path conditions; smallest-target
    arcs are consumed first so the result is reproducible.
    """
    remaining: dict[str, list[str]] = {}
    count = 0
    for src, dst in arcs:
        remaining.setdefault(src, []).append(dst)
        count += 1
    for targets in remaining.values():
        targets.sort(reverse=True)  # pop() yields the smallest
    stack, path = [start], []
    while stack:
        v = stack[-1]
        if remaining.get(v):
            stack.append(remaining[v].pop())
        else:
            path.append(stack.pop())
    path.reverse()
    if len(path) != count + 1:
        raise ValueError("arc set does not form a single open walk")
    return path


class WalkCostIndex:
    """Per-museum table of minimum covering-walk costs."""

    def __init__(self, museum: Museum, timing: TimingModel,
                 entries: list[tuple[frozenset[str], int, tuple[Arc, ...]]]):
        self.museum = museum
        self.timing = timing
        self.entries = entries
        self._cover_cache: dict[frozenset[str], CoveredWalk | None] = {}

    @classmethod
    def build(cls, museum: Museum, timing: TimingModel, *,
              max_cycles: int = 4096, max_combinations: int = 400_000) -> "WalkCostIndex":
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(museum.vertices))
        graph.add_edges_from(sorted(museum.arcs))

        cycles: list[tuple[frozenset[Arc], frozenset[str], int]] = []
        for cycle in nx.simple_cycles(graph):
            arcs = frozenset(
                (cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))
            cost = sum(timing.arc_dm(a) for a in arcs)
            cycles.append((arcs, frozenset(cycle), cost))
            if len(cycles) > max_cycles:
                raise WalkIndexCapExceeded(
                    f"more than {max_cycles} simple cycles; instance beyond desk scale")
        # Canonical order keeps the enumeration (and tie-breaks) reproducible.
        cycles.sort(key=lambda c: (len(c[0]), sorted(c[0])))

        paths: list[tuple[tuple[Arc, ...], frozenset[str], int]] = []
        for entrance in sorted(museum.entrances):
            for exit_ in sorted(museum.exits):
                for path in nx.all_simple_paths(graph, entrance, exit_):
                    arcs = tuple(zip(path, path[1:]))
                    cost = sum(timing.arc_dm(a) for a in arcs)
                    paths.append((arcs, frozenset(path), cost))
                    if len(paths) > max_combinations:
                        raise WalkIndexCapExceeded("too many entrance→exit paths")

        room_dm = {v: timing.room_dm(v) for v in museum.vertices}
        best: dict[frozenset[str], tuple[int, int, tuple[Arc, ...]]] = {}
        budget = max_combinations

        def consider(arc_sets: Sequence[frozenset[Arc] | tuple[Arc, ...]],
                     touched: frozenset[str], arc_cost: int) -> None:
            all_arcs: set[Arc] = set()
            for group in arc_sets:
                all_arcs.update(group)
            # Weak connectivity: every arc endpoint must join the path component.
            parent: dict[str, str] = {}

            def find(v: str) -> str:
                while parent.setdefault(v, v) != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            for src, dst in all_arcs:
                ra, rb = find(src), find(dst)
                if ra != rb:
                    parent[ra] = rb
            roots = {find(v) for v in touched}
            if len(roots) != 1:
                return
            total = arc_cost + sum(room_dm[v] for v in touched)
            key = touched
            candidate = (total, len(all_arcs), tuple(sorted(all_arcs)))
            if key not in best or candidate < best[key]:
                best[key] = candidate

        for path_arcs, path_verts, path_cost in paths:
            path_set = frozenset(path_arcs)
            # DFS over arc-disjoint cycle combinations, cycles in index order.
            stack: list[tuple[int, frozenset[Arc], frozenset[str], int]] = [
                (0, path_set, path_verts, path_cost)]
            while stack:
                start_idx, used, touched, cost = stack.pop()
                budget -= 1
                if budget < 0:
                    raise WalkIndexCapExceeded(
                        f"walk enumeration exceeded {max_combinations} combinations")
                consider((used,), touched, cost)
                for i in range(start_idx, len(cycles)):
                    arcs, verts, ccost = cycles[i]
                    if arcs & used:
                        continue
                    stack.append((i + 1, used | arcs, touched | verts, cost + ccost))

        entries = [(touched, cost, arcs) for touched, (cost, _n, arcs) in best.items()]
        entries.sort(key=lambda e: (e[1], len(e[2]), sorted(e[0])))
        return cls(museum, timing, entries)

    def cover(self, required: frozenset[str]) -> CoveredWalk | None:
        """Cheapest walk touching at least ``required``; None if unreachable."""
        hit = self._cover_cache.get(required, _MISS)
        if hit is not _MISS:
            return hit
        found: CoveredWalk | None = None
        for touched, cost, arcs in self.entries:  # entries sorted by cost
            if required <= touched:
                found = CoveredWalk(touched=touched, cost_dm=cost, arcs=arcs)
                break
        self._cover_cache[required] = found
        return found

    def min_crossing(self) -> CoveredWalk | None:
        return self.cover(frozenset())

    def walk_vertices(self, walk: CoveredWalk) -> list[str]:
        (start,) = {src for src, _ in walk.arcs} & self.museum.entrances
        return euler_walk(walk.arcs, start)


_MISS = object()

# Strong references keep the keyed ids valid; bounded so long runs over many
# generated instances do not accumulate indexes.
_index_cache: dict[tuple[int, int], tuple[Museum, TimingModel, WalkCostIndex]] = {}
_INDEX_CACHE_MAX = 16


def index_for(museum: Museum, timing: TimingModel) -> WalkCostIndex:
    """Build-or-reuse the walk index for this (museum, timing) pair."""
    key = (id(museum), id(timing))
    hit = _index_cache.get(key)
    if hit is not None and hit[0] is museum and hit[1] is timing:
        return hit[2]
    index = WalkCostIndex.build(museum, timing)
    if len(_index_cache) >= _INDEX_CACHE_MAX:
        _index_cache.pop(next(iter(_index_cache)))
    _index_cache[key] = (museum, timing, index)
    return index
