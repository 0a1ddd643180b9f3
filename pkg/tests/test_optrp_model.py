import random

import pytest

from museplan.optrp import TourProblem, build_ilp, solve_exact
from museplan.optrp.model import x_var, z_var
from conftest import build_museum
from instances import random_instance


def counts(museum, include=frozenset(), exclude=frozenset(), u=None, t_max=60.0):
    m, t = museum
    problem = TourProblem(museum=m, timing=t, u=u or {}, t_max_min=t_max,
                          include=include, exclude=exclude)
    return build_ilp(problem)


def expected_variables(m):
    return len(m.artworks) + 2 * len(m.arcs) + len(m.vertices)


def expected_constraints(m, n_include):
    return (3 + 4 * len(m.arcs) + len(m.artworks) + 3 * len(m.vertices)
            + n_include - 2 * (len(m.entrances) + len(m.exits)))


def test_spec_size_example():
    # |P|=2, |A|=3, |V|=4, |I|=1, |E|=|X|=1 -> 12 variables, 26 constraints
    museum = build_museum(
        [("E", "entrance", 0), ("X", "exit", 0), ("v1", "room", 1), ("v2", "room", 1)],
        [("E", "v1", 0.5), ("v1", "v2", 0.5), ("v2", "X", 0.5)],
        [("p1", "a", "v1"), ("p2", "b", "v2")],
    )
    model = counts(museum, include=frozenset({"p1"}))
    assert model.variable_count == 12
    assert model.constraint_count == 26


def test_no_fixing_rows_when_sets_empty(corridor):
    model = counts(corridor)
    assert not [c for c in model.constraints if c.tag.startswith("forced-include")]
    m = model.problem.museum
    assert model.constraint_count == expected_constraints(m, 0)


def test_exclusion_is_a_bound_not_a_row(corridor):
    model = counts(corridor, exclude=frozenset({"a2"}))
    assert model.bounds[x_var("a2")] == (0, 0)
    assert model.constraint_count == expected_constraints(model.problem.museum, 0)


def test_inclusion_bound_and_row(corridor):
    model = counts(corridor, include=frozenset({"a1"}))
    assert model.bounds[x_var("a1")] == (1, 1)
    tags = [c.tag for c in model.constraints]
    assert "forced-include[a1]" in tags


@pytest.mark.parametrize("seed", range(10))
def test_size_formulas_random(seed):
    museum, timing, problem = random_instance(seed, with_fixings=True)
    model = build_ilp(problem)
    assert model.variable_count == expected_variables(museum)
    assert model.constraint_count == expected_constraints(museum, len(problem.include))


def test_verify_catches_violations(corridor):
    m, t = corridor
    problem = TourProblem(museum=m, timing=t, u={"a1": 1.0, "a2": 0.5}, t_max_min=30.0)
    model = build_ilp(problem)
    solution = solve_exact(model)
    assert model.verify(solution.assignment) == []

    broken = dict(solution.assignment)
    broken[z_var("v1")] = 0
    assert model.verify(broken)

    out_of_bounds = dict(solution.assignment)
    out_of_bounds[x_var("a1")] = 2
    assert any("bounds" in v for v in model.verify(out_of_bounds))

    del broken[z_var("v1")]
    assert any("missing" in v for v in model.verify(broken))


def test_problem_invariants(corridor):
    m, t = corridor
    with pytest.raises(ValueError, match="overlap"):
        TourProblem(museum=m, timing=t, u={}, t_max_min=10,
                    include=frozenset({"a1"}), exclude=frozenset({"a1"}))
    with pytest.raises(ValueError, match="unknown artworks"):
        TourProblem(museum=m, timing=t, u={}, t_max_min=10,
                    include=frozenset({"ghost"}))
    with pytest.raises(ValueError, match="positive"):
        TourProblem(museum=m, timing=t, u={}, t_max_min=0)
    with pytest.raises(ValueError, match="finite"):
        TourProblem(museum=m, timing=t, u={"a1": float("nan")}, t_max_min=10)


def test_objective_coefficients_are_utilities(corridor):
    m, t = corridor
    problem = TourProblem(museum=m, timing=t, u={"a1": 0.25}, t_max_min=10)
    model = build_ilp(problem)
    assert model.objective[x_var("a1")] == 0.25
    assert model.objective[x_var("a2")] == 0.0
