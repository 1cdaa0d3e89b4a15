import random
from fractions import Fraction

import pytest

from mst_fortify.approx import budgeted_approx, ordered_shores, targeted_approx
from mst_fortify.errors import FortifyError
from mst_fortify.graph import mst_weight
from mst_fortify.oracle import brute_budgeted, brute_targeted
from mst_fortify.strength import min_inc_cost_set


@pytest.mark.parametrize("target, cost", [(1, 2), (2, 3)])
def test_targeted_on_triangle(triangle, target, cost):
    solution = targeted_approx(triangle, target)
    assert solution.cost == cost
    assert solution.achieved_increase == target
    assert brute_targeted(triangle, target).cost == cost


def test_targeted_rounding_record(triangle):
    solution = targeted_approx(triangle, 1)
    assert solution.continuous_bound == Fraction(3, 2)
    rounding = solution.rounding
    assert rounding.floor_lift == 0
    assert rounding.shores_lifted == 1
    assert rounding.residual_increase == 1
    assert rounding.lifted_edges == {0, 1}
    assert solution.perturbation.as_dict() == {0: 1, 1: 1}


def test_targeted_without_residue_has_no_rounding(triangle):
    assert targeted_approx(triangle, 2).rounding is None


def test_targeted_on_path(path):
    solution = targeted_approx(path, 5)
    assert solution.cost == 5
    assert solution.achieved_increase == 5
    assert solution.perturbation.as_dict() == {0: 2, 1: 1, 2: 2}


def test_targeted_rejects_non_positive_targets(triangle):
    with pytest.raises(FortifyError, match="positive integer"):
        targeted_approx(triangle, 0)


@pytest.mark.parametrize("budget, increase", [(0, 0), (1, 0), (2, 1), (3, 2)])
def test_budgeted_on_triangle(triangle, budget, increase):
    solution = budgeted_approx(triangle, budget)
    assert solution.achieved_increase == increase
    assert solution.cost <= budget
    assert brute_budgeted(triangle, budget).achieved_increase == increase


def test_budgeted_rejects_fractional_budgets(triangle):
    with pytest.raises(FortifyError, match="non-negative integer"):
        budgeted_approx(triangle, Fraction(1, 2))


def test_shores_are_ordered_by_cut_cost(path):
    cert = min_inc_cost_set(path)
    order = ordered_shores(cert)
    assert [min(cert.shore_vertices(position)) for position in order] == [0, 3, 1, 2]


@pytest.mark.parametrize("seed", range(10))
def test_budgeted_guarantee(graph_factory, seed):
    rng = random.Random(300 + seed)
    g = graph_factory(rng, vertices=rng.randint(2, 4), extra_edges=rng.randint(0, 2))
    budget = rng.randint(0, 4)
    solution = budgeted_approx(g, budget)
    best = brute_budgeted(g, budget).achieved_increase
    assert solution.cost <= budget
    assert solution.achieved_increase >= Fraction(best, 2) - 1
    assert mst_weight(g, solution.perturbation) - mst_weight(g) == solution.achieved_increase


@pytest.mark.parametrize("seed", range(10))
def test_targeted_guarantee(graph_factory, seed):
    rng = random.Random(400 + seed)
    g = graph_factory(rng, vertices=rng.randint(2, 4), extra_edges=rng.randint(0, 2))
    target = rng.randint(1, 3)
    solution = targeted_approx(g, target)
    best = brute_targeted(g, target).cost
    assert solution.achieved_increase >= target
    assert solution.cost <= 2 * (1 - Fraction(1, g.vertex_count)) * best
    assert solution.continuous_bound <= best
