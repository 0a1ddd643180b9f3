"""Simulation harness: relevance percentage and duration sweeps.

Reproduces the evaluation protocol: plan tours over a grid of time budgets
for each interest function; f3/f4 are averaged over a shared list of random
artist combinations. The relevance percentage of a tour is the share of the
collection's total interest it captures.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from museplan.corpus import Museum, TimingModel
from museplan.optrp import DEFAULT_NODE_CAP, plan
from museplan.prefs import InterestFunctionSpec, build_interest
from museplan.textenergy import EnergyTable, rank_artworks
from museplan.tour import Tour

DEFAULT_DURATIONS = tuple(range(30, 331, 15))
DEFAULT_COMBO_SIZES = (2, 3, 4, 5)


def relevance_percentage(tour: Tour, u: dict[str, float], museum: Museum) -> float:
    """100 × (interest captured by the tour) / (total interest of the collection)."""
    total = math.fsum(u.get(a.id, 0.0) for a in museum.artworks)
    if total <= 0:
        raise ValueError("undefined relevance: total interest is zero")
    captured = math.fsum(u.get(p, 0.0) for p in sorted(tour.visited_artworks))
    return 100.0 * captured / total


@dataclass(frozen=True)
class SweepConfig:
    durations: tuple[int, ...] = DEFAULT_DURATIONS
    combo_sizes: tuple[int, ...] = DEFAULT_COMBO_SIZES
    combos_per_size: int = 50
    seed: int = 0
    kinds: tuple[str, ...] = ("f1", "f2", "f3", "f4")
    artist_weight: float = 10.0

    def __post_init__(self) -> None:
        if not self.durations or any(d <= 0 for d in self.durations):
            raise ValueError("durations must be positive")
        if list(self.durations) != sorted(self.durations):
            raise ValueError("durations must be ascending")
        if self.combos_per_size < 1:
            raise ValueError("combos_per_size must be >= 1")
        bad = set(self.kinds) - {"f1", "f2", "f3", "f4"}
        if bad:
            raise ValueError(f"unknown interest kinds: {sorted(bad)}")


@dataclass(frozen=True)
class SweepRow:
    kind: str
    duration_min: int
    mean_rp: float | None  # None when every cell hit the solver cap
    n: int


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    capped_cells: int = 0
    infeasible_cells: int = 0

    def to_csv(self) -> str:
        lines = ["kind,duration_min,mean_rp,n"]
        for r in self.rows:
            rp = "" if r.mean_rp is None else f"{r.mean_rp:.6f}"
            lines.append(f"{r.kind},{r.duration_min},{rp},{r.n}")
        return "\n".join(lines) + "\n"

    def series(self, kind: str) -> list[tuple[int, float]]:
        return [(r.duration_min, r.mean_rp) for r in self.rows
                if r.kind == kind and r.mean_rp is not None]

    def improvements(self, kind: str, baseline: str) -> list[tuple[int, float]]:
        """Per-duration mean_rp(kind) − mean_rp(baseline), percentage points."""
        base = dict(self.series(baseline))
        return [(d, rp - base[d]) for d, rp in self.series(kind) if d in base]


def sample_artist_combos(museum: Museum, cfg: SweepConfig) -> list[frozenset[str]]:
    """Random artist sets, ``combos_per_size`` of each size, reproducible from the seed.

    Each combination is drawn uniformly without replacement within the combo;
    distinct combos may repeat, as in the original protocol. The same list is
    reused for every interest kind that needs one.
    """
    artists = list(museum.artists)
    for size in cfg.combo_sizes:
        if size > len(artists):
            raise ValueError(f"combo size {size} exceeds {len(artists)} artists")
    rng = random.Random(cfg.seed)
    combos = []
    for size in cfg.combo_sizes:
        for _ in range(cfg.combos_per_size):
            combos.append(frozenset(rng.sample(artists, size)))
    return combos


def run_sweep(museum: Museum, timing: TimingModel, cfg: SweepConfig, *,
              energy: EnergyTable | None = None, node_cap: int = DEFAULT_NODE_CAP,
              chart_path: str | None = None) -> SweepResult:
    """Plan a tour per (kind, duration[, combo]) with I = R = ∅ and aggregate mean rp.

    Cells whose solve hits the node cap are excluded from the mean and counted
    in ``capped_cells``. Rows are ordered by (kind, duration); a fixed seed
    yields a byte-identical table.
    """
    if energy is None and ({"f2", "f4"} & set(cfg.kinds)):
        energy = rank_artworks(museum)
    combos = (sample_artist_combos(museum, cfg)
              if {"f3", "f4"} & set(cfg.kinds) else [])

    interest_sets: dict[str, list[dict[str, float]]] = {}
    for kind in cfg.kinds:
        if kind in ("f1", "f2"):
            spec = InterestFunctionSpec(kind=kind, energy=energy)
            interest_sets[kind] = [build_interest(spec, museum)]
        else:
            interest_sets[kind] = [
                build_interest(InterestFunctionSpec(
                    kind=kind, selected_artists=combo, energy=energy,
                    artist_weight=cfg.artist_weight), museum)
                for combo in combos]

    rows: list[SweepRow] = []
    capped = infeasible = 0
    for kind in cfg.kinds:
        for duration in cfg.durations:
            values = []
            for u in interest_sets[kind]:
                result = plan(museum, timing, u, float(duration), node_cap=node_cap)
                if result.solution.optimal:
                    values.append(relevance_percentage(result.tour, u, museum))
                elif result.solution.status == "infeasible":
                    infeasible += 1
                else:
                    capped += 1
            mean = math.fsum(values) / len(values) if values else None
            rows.append(SweepRow(kind=kind, duration_min=duration,
                                 mean_rp=mean, n=len(values)))

    result = SweepResult(rows=tuple(rows), capped_cells=capped,
                         infeasible_cells=infeasible)
    if chart_path:
        render_chart(result, chart_path)
    return result


def render_chart(result: SweepResult, path: str) -> None:
    """Write an rp-vs-duration chart, one series per interest kind."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))
    for kind in ("f1", "f2", "f3", "f4"):
        series = result.series(kind)
        if series:
            ax.plot([d for d, _ in series], [rp for _, rp in series],
                    marker="o", markersize=3, label=kind)
    ax.set_xlabel("visit duration (min)")
    ax.set_ylabel("mean relevance percentage")
    ax.set_ylim(0, 105)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
