import random
from fractions import Fraction

import pytest

from mst_fortify.errors import FortifyError, UnreachableTargetError
from mst_fortify.graph import WeightedGraph, mst_weight
from mst_fortify.oracle import brute_budgeted, greedy_oracle_increase
from mst_fortify.raise_mst import CurveEnd, curve, invert_curve, raise_mst
from mst_fortify.strength import coarsest_first, finest_first, prefer_edges


@pytest.fixture(params=[finest_first, coarsest_first])
def select(request):
    return request.param


@pytest.fixture
def capped_edge():
    return WeightedGraph.from_edges(2, [(0, 1, 0, 5, 1)])


def test_raise_on_path(path, select):
    trace = raise_mst(path, 4, select=select)
    assert trace.increase == 4
    assert trace.spent == 4
    assert mst_weight(path, trace.perturbation) == 4


def test_raise_follows_a_chosen_tie_break(path):
    trace = raise_mst(path, 4, select=prefer_edges({0, 1}))
    assert trace.final_weights == [2, 2, 0]
    assert trace.breakpoints() == [0, 2, 4]
    assert trace.weights_at(3) == [Fraction(3, 2), Fraction(3, 2), 0]
    assert [lift.amount for lift in trace.unit_lifts()] == [1, 1]


def test_raise_on_triangle(triangle):
    trace = raise_mst(triangle, 3)
    assert trace.increase == 2
    assert trace.final_weights == [1, 1, 1]
    [step] = trace.steps
    assert step.certificate.inc_cost == Fraction(3, 2)
    assert step.mst_before == 0
    assert step.mst_after == 2


def test_zero_budget(weighted_triangle):
    trace = raise_mst(weighted_triangle, 0)
    assert trace.steps == ()
    assert trace.increase == 0
    assert trace.breakpoints() == [0]


def test_negative_budget(triangle):
    with pytest.raises(FortifyError, match="non-negative"):
        raise_mst(triangle, -1)


def test_weighted_triangle_lifts_light_pair_first(weighted_triangle):
    trace = raise_mst(weighted_triangle, 4)
    assert [step.edges for step in trace.steps] == [frozenset({1, 2}), frozenset({1, 2})]
    assert [step.amount for step in trace.steps] == [1, 1]
    assert trace.steps[0].tolerance == 1
    assert trace.increase == 3


def test_raise_stops_at_caps(capped_edge):
    trace = raise_mst(capped_edge, 10)
    assert trace.spent == 5
    assert trace.increase == 1


def test_weights_at_rejects_untraced_budgets(capped_edge):
    trace = raise_mst(capped_edge, 10)
    with pytest.raises(FortifyError, match="outside the traced range"):
        trace.weights_at(6)


def test_curve_of_triangle(triangle):
    traced = curve(triangle)
    assert traced.end == CurveEnd.UNBOUNDED
    assert traced.rows() == [(0, 0, Fraction(2, 3))]
    assert traced.value(3) == 2


def test_curve_of_weighted_triangle():
    g = WeightedGraph.from_edges(3, [(0, 1, 2, 1), (0, 2, 1, 1), (1, 2, 1, 1)])
    traced = curve(g)
    assert traced.rows() == [(0, 2, 1), (2, 4, Fraction(2, 3))]
    for budget in (1, 2, 3):
        assert traced.increase(budget) == raise_mst(g, budget).increase
    assert traced.is_concave()


def test_curve_of_capped_edge(capped_edge):
    traced = curve(capped_edge)
    assert traced.end == CurveEnd.CAPPED
    assert traced.rows() == [(0, 0, Fraction(1, 5)), (5, 1, 0)]
    assert traced.value(100) == 1


def test_curve_with_budget_limit(weighted_triangle):
    traced = curve(weighted_triangle, 1)
    assert traced.end == CurveEnd.LIMIT
    assert traced.value(1) == 3
    with pytest.raises(FortifyError, match="only traced up to"):
        traced.value(2)


def test_invert_curve(triangle, capped_edge):
    assert invert_curve(curve(triangle), 2) == 3
    assert invert_curve(curve(triangle), 0) == 0
    with pytest.raises(UnreachableTargetError, match="maximum is 1") as raised:
        invert_curve(curve(capped_edge), 2)
    assert raised.value.max_increase == 1


@pytest.mark.parametrize("seed", range(8))
def test_greedy_matches_exhaustive_strength(graph_factory, seed, select):
    rng = random.Random(seed)
    g = graph_factory(rng, vertices=4, extra_edges=2)
    budget = Fraction(rng.randint(1, 8), rng.randint(1, 2))
    assert raise_mst(g, budget, select=select).increase == greedy_oracle_increase(g, budget)


@pytest.mark.parametrize("seed", range(8))
def test_continuous_optimum_bounds_integral_optimum(graph_factory, seed):
    rng = random.Random(100 + seed)
    g = graph_factory(rng, vertices=4, extra_edges=1)
    budget = rng.randint(0, 4)
    assert raise_mst(g, budget).increase >= brute_budgeted(g, budget).achieved_increase


@pytest.mark.parametrize("seed", range(6))
def test_curve_agrees_with_raise(graph_factory, seed):
    rng = random.Random(200 + seed)
    g = graph_factory(rng, vertices=4, extra_edges=2)
    traced = curve(g)
    assert traced.end == CurveEnd.UNBOUNDED
    assert traced.is_concave()
    for budget in (0, 1, Fraction(5, 2), 4, 7):
        assert traced.increase(budget) == raise_mst(g, budget).increase
