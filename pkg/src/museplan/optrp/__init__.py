"""Optimal tour computation: model, exact solver, oracle, planning helpers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from museplan.corpus import Museum, TimingModel
from museplan.optrp.model import Constraint, IlpModel, build_ilp
from museplan.optrp.oracle import OracleResult, brute_force_oracle
from museplan.optrp.problem import TourProblem
from museplan.optrp.solver import DEFAULT_NODE_CAP, IlpSolution, solve_exact
from museplan.optrp.walks import WalkCostIndex, WalkIndexCapExceeded, euler_walk, index_for
from museplan.tour import Tour, reconstruct_tour, validate_tour


@dataclass(frozen=True)
class PlanResult:
    problem: TourProblem
    model: IlpModel
    solution: IlpSolution
    tour: Tour | None


def plan(museum: Museum, timing: TimingModel, u: Mapping[str, float], t_max_min: float,
         include: frozenset[str] = frozenset(), exclude: frozenset[str] = frozenset(),
         *, node_cap: int = DEFAULT_NODE_CAP, time_cap_s: float | None = None) -> PlanResult:
    """Build the model, solve it exactly, and reconstruct the tour."""
    problem = TourProblem(museum=museum, timing=timing, u=dict(u), t_max_min=t_max_min,
                          include=include, exclude=exclude)
    model = build_ilp(problem)
    solution = solve_exact(model, node_cap=node_cap, time_cap_s=time_cap_s)
    tour = reconstruct_tour(solution, problem) if solution.optimal else None
    return PlanResult(problem=problem, model=model, solution=solution, tour=tour)


def solution_report(result: PlanResult) -> dict:
    """Structured export of a solve: status, objective, every variable, the tour."""
    solution = result.solution
    report: dict = {"status": solution.status, "nodes_explored": solution.nodes}
    if solution.status == "infeasible":
        report["infeasible_reason"] = solution.infeasible_reason
    if solution.optimal:
        report["objective"] = solution.objective
        report["variables"] = dict(solution.assignment)
        report["selected_artworks"] = list(solution.selected)
        tour = result.tour
        report["tour"] = {
            "steps": [{"room": s.vertex, "artworks": list(s.artworks)}
                      for s in tour.steps],
            "rooms_min": tour.rooms_dm / 10,
            "arcs_min": tour.arcs_dm / 10,
            "artworks_min": tour.artworks_dm / 10,
            "total_min": tour.total_min,
        }
    return report


def full_visit_time_min(museum: Museum, timing: TimingModel) -> float:
    """Minutes needed to see every artwork: all artwork time + the cheapest
    walk covering every room that exhibits one."""
    index = index_for(museum, timing)
    rooms = frozenset({a.room for a in museum.artworks})
    cover = index.cover(rooms)
    if cover is None:
        raise ValueError("no walk covers every exhibiting room")
    total_dm = cover.cost_dm + sum(timing.artwork_dm(a.id) for a in museum.artworks)
    return total_dm / 10.0


__all__ = [
    "Constraint",
    "IlpModel",
    "IlpSolution",
    "OracleResult",
    "PlanResult",
    "TourProblem",
    "Tour",
    "WalkCostIndex",
    "WalkIndexCapExceeded",
    "brute_force_oracle",
    "build_ilp",
    "euler_walk",
    "full_visit_time_min",
    "index_for",
    "plan",
    "reconstruct_tour",
    "solution_report",
    "solve_exact",
    "validate_tour",
    "DEFAULT_NODE_CAP",
]
