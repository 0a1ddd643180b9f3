"""Explicit integer linear model for the tour problem.

Decision variables:
  x[p]    1 iff artwork p is in the tour
  y[a]    1 iff directed arc a is crossed
  f[a]    rooms crossed upon arriving at arc a (0 on unused arcs)
  z[v]    1 iff vertex v is traversed

subject to: one entrance departure, one exit arrival, balance at internal
vertices, flow bounds tying f to y, a unit flow increment per traversed
internal vertex, arc/room coupling both ways, artwork/room coupling, forced
inclusions, and the time budget. Exclusions are variable fixings (upper
bound 0), not constraint rows, which keeps the row count at
3 + 4|A| + |P| + 3|V| + |I| − 2(|E| + |X|).

All constraint coefficients are integers (times in deciminutes), so
solutions can be verified exactly; interests only enter the objective.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from museplan.optrp.problem import TourProblem

Arc = tuple[str, str]


def x_var(p: str) -> str:
    return f"x[{p}]"


def y_var(a: Arc) -> str:
    return f"y[{a[0]}->{a[1]}]"


def f_var(a: Arc) -> str:
    return f"f[{a[0]}->{a[1]}]"


def z_var(v: str) -> str:
    return f"z[{v}]"


@dataclass(frozen=True)
class Constraint:
    """Σ coeff·var  (sense)  rhs, with integer coefficients."""

    tag: str
    coeffs: tuple[tuple[str, int], ...]
    sense: str  # "<=", ">=", "=="
    rhs: int

    def satisfied(self, assignment: Mapping[str, int]) -> bool:
        lhs = sum(c * assignment[v] for v, c in self.coeffs)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class IlpModel:
    """Variables, bounds, objective and tagged constraint rows for one problem."""

    problem: TourProblem
    variables: tuple[str, ...]
    bounds: dict[str, tuple[int, int]]
    objective: dict[str, float]
    constraints: list[Constraint] = field(default_factory=list)

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    @property
    def constraint_count(self) -> int:
        return len(self.constraints)

    def verify(self, assignment: Mapping[str, int]) -> list[str]:
        """Exact integer check of bounds and every row; returns violations."""
        issues = []
        for var in self.variables:
            value = assignment.get(var)
            if value is None:
                issues.append(f"missing assignment for {var}")
                continue
            lo, hi = self.bounds[var]
            if not (lo <= value <= hi):
                issues.append(f"{var}={value} outside bounds [{lo}, {hi}]")
        if issues:
            return issues
        for con in self.constraints:
            if not con.satisfied(assignment):
                issues.append(f"violated {con.tag}")
        return issues

    def objective_value(self, assignment: Mapping[str, int]) -> float:
        return sum(coeff * assignment[var] for var, coeff in self.objective.items())


def build_ilp(problem: TourProblem) -> IlpModel:
    m = problem.museum
    t = problem.timing
    arcs = sorted(m.arcs)
    vertices = sorted(m.vertices)
    artworks = [a.id for a in m.artworks]
    room_of = m.room_of
    internal = [v for v in vertices if v not in m.entrances and v not in m.exits]
    n_vertices = len(vertices)

    out_arcs: dict[str, list[Arc]] = {v: [] for v in vertices}
    in_arcs: dict[str, list[Arc]] = {v: [] for v in vertices}
    for a in arcs:
        out_arcs[a[0]].append(a)
        in_arcs[a[1]].append(a)

    variables = tuple([x_var(p) for p in artworks]
                      + [y_var(a) for a in arcs]
                      + [f_var(a) for a in arcs]
                      + [z_var(v) for v in vertices])
    bounds = {x_var(p): (0, 1) for p in artworks}
    for p in problem.include:
        bounds[x_var(p)] = (1, 1)
    for p in problem.exclude:
        bounds[x_var(p)] = (0, 0)
    bounds.update({y_var(a): (0, 1) for a in arcs})
    bounds.update({f_var(a): (0, n_vertices) for a in arcs})
    bounds.update({z_var(v): (0, 1) for v in vertices})

    objective = {x_var(p): problem.utility(p) for p in artworks}
    cons: list[Constraint] = []

    cons.append(Constraint(
        "enter-once",
        tuple((y_var(a), 1) for e in sorted(m.entrances) for a in out_arcs[e]),
        "==", 1))
    cons.append(Constraint(
        "exit-once",
        tuple((y_var(a), 1) for x in sorted(m.exits) for a in in_arcs[x]),
        "==", 1))
    for v in internal:
        cons.append(Constraint(
            f"balance[{v}]",
            tuple((y_var(a), 1) for a in out_arcs[v]) + tuple((y_var(a), -1) for a in in_arcs[v]),
            "==", 0))
    for a in arcs:
        cons.append(Constraint(f"flow-lb[{a[0]}->{a[1]}]",
                               ((f_var(a), 1), (y_var(a), -1)), ">=", 0))
    for a in arcs:
        cons.append(Constraint(f"flow-ub[{a[0]}->{a[1]}]",
                               ((f_var(a), 1), (y_var(a), -n_vertices)), "<=", 0))
    for v in internal:
        # entering flow = leaving flow − z_v: one increment per traversed room
        cons.append(Constraint(
            f"flow-step[{v}]",
            tuple((f_var(a), 1) for a in in_arcs[v])
            + tuple((f_var(a), -1) for a in out_arcs[v]) + ((z_var(v), 1),),
            "==", 0))
    for v in vertices:
        cons.append(Constraint(
            f"room-needs-arc[{v}]",
            tuple((y_var(a), 1) for a in out_arcs[v]) + tuple((y_var(a), 1) for a in in_arcs[v])
            + ((z_var(v), -1),),
            ">=", 0))
    for v in vertices:
        for a in sorted(set(out_arcs[v]) | set(in_arcs[v])):
            cons.append(Constraint(f"arc-implies-room[{v},{a[0]}->{a[1]}]",
                                   ((y_var(a), 1), (z_var(v), -1)), "<=", 0))
    for p in artworks:
        cons.append(Constraint(f"artwork-needs-room[{p}]",
                               ((x_var(p), 1), (z_var(room_of[p]), -1)), "<=", 0))
    for p in sorted(problem.include):
        cons.append(Constraint(f"forced-include[{p}]", ((x_var(p), 1),), "==", 1))
    cons.append(Constraint(
        "time-budget",
        tuple((z_var(v), t.room_dm(v)) for v in vertices)
        + tuple((y_var(a), t.arc_dm(a)) for a in arcs)
        + tuple((x_var(p), t.artwork_dm(p)) for p in artworks),
        "<=", problem.t_max_dm))

    return IlpModel(problem=problem, variables=variables, bounds=bounds,
                    objective=objective, constraints=cons)
