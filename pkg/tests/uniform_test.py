import random
from fractions import Fraction

import pytest

from mst_fortify.config import Limits
from mst_fortify.errors import FortifyError, SizeGuardError, UniformWeightError
from mst_fortify.graph import WeightedGraph, coverage
from mst_fortify.oracle import brute_budgeted, brute_min_k_cut, brute_targeted
from mst_fortify.uniform import (
    CutFamily,
    KnapsackItem,
    min_i_cut,
    mincut_lift_heuristic,
    profit_dp,
    unbounded_knapsack,
    uncross,
    uniform_budgeted_exact,
    uniform_halfeps_approx,
    uniform_targeted_exact,
)


def uniform_graph(rng: random.Random, vertices: int, extra_edges: int) -> WeightedGraph:
    pairs = [(rng.randrange(v), v) for v in range(1, vertices)]
    pairs += [tuple(rng.sample(range(vertices), 2)) for _ in range(extra_edges)]
    return WeightedGraph.from_edges(vertices, [(u, v, 1, rng.randint(1, 3)) for u, v in pairs])


def test_min_i_cut(path, triangle):
    assert path.cost_of(min_i_cut(path, 2)) == 1
    assert min_i_cut(triangle, 2) in ({0, 1}, {0, 2}, {1, 2})
    assert min_i_cut(triangle, 3) == {0, 1, 2}
    with pytest.raises(FortifyError, match=r"i must lie in \[2, 3\]"):
        min_i_cut(triangle, 4)


def test_min_i_cut_guard(four_cycle):
    with pytest.raises(SizeGuardError, match="guard of 3"):
        min_i_cut(four_cycle, 3, limits=Limits(max_cut_vertices=3))


@pytest.mark.parametrize("seed", range(6))
def test_min_i_cut_matches_edge_subset_search(seed):
    rng = random.Random(500 + seed)
    g = uniform_graph(rng, 5, 3)
    for i in range(2, 5):
        assert g.cost_of(min_i_cut(g, i)) == brute_min_k_cut(g, i)


def test_unbounded_knapsack():
    assert unbounded_knapsack([KnapsackItem(weight=2, profit=1)], 5) == (2,)
    assert unbounded_knapsack(
        [KnapsackItem(weight=3, profit=2), KnapsackItem(weight=4, profit=3)], 10
    ) == (2, 1)
    assert unbounded_knapsack([KnapsackItem(weight=3, profit=2)], 0) == (0,)


@pytest.mark.parametrize("seed", range(8))
def test_unbounded_knapsack_matches_table(seed):
    rng = random.Random(600 + seed)
    items = [KnapsackItem(weight=rng.randint(1, 6), profit=rng.randint(1, 5)) for _ in range(3)]
    capacity = rng.randint(0, 20)
    best = [0] * (capacity + 1)
    for room in range(1, capacity + 1):
        best[room] = max(
            [best[room - 1]]
            + [best[room - item.weight] + item.profit for item in items if item.weight <= room]
        )
    counts = unbounded_knapsack(items, capacity)
    assert sum(count * item.weight for count, item in zip(counts, items, strict=True)) <= capacity
    assert sum(count * item.profit for count, item in zip(counts, items, strict=True)) == best[capacity]


def test_profit_dp():
    items = [KnapsackItem(weight=2, profit=1), KnapsackItem(weight=3, profit=2)]
    assert profit_dp(items, 2) == (0, 1)
    assert profit_dp(items, 1) == (1, 0)
    assert profit_dp([KnapsackItem(weight=1, profit=1)], 5) == (5,)


def test_uncross_on_path(path):
    chain = uncross(CutFamily(members=((frozenset({0, 1}), 1), (frozenset({1, 2}), 1))), path)
    assert chain.chain
    assert chain.is_chain()
    assert chain.members == ((frozenset({0, 1, 2}), 1), (frozenset({1}), 1))
    assert chain.total_coverage(path) == 4


def test_uncross_keeps_chains(triangle):
    family = CutFamily(members=((frozenset({0, 1, 2}), 2), (frozenset({1}), 1)))
    assert uncross(family, triangle).members == family.members


def test_uncross_never_lowers_coverage(triangle):
    family = CutFamily(members=((frozenset({0, 1}), 1), (frozenset({1, 2}), 1)))
    chain = uncross(family, triangle)
    assert chain.members == ((frozenset({0, 1, 2}), 1), (frozenset({1}), 1))
    assert family.total_coverage(triangle) == 2
    assert chain.total_coverage(triangle) == 2
    assert chain.total_cost(triangle) == family.total_cost(triangle)
    assert chain.potential() > family.potential()


@pytest.mark.parametrize("target, cost", [(1, 2), (2, 3)])
def test_uniform_targeted_exact_on_triangle(triangle, target, cost):
    solution = uniform_targeted_exact(triangle, target)
    assert solution.cost == cost
    assert solution.achieved_increase >= target


def test_uniform_targeted_exact_on_path(path):
    solution = uniform_targeted_exact(path, 4)
    assert solution.cost == 4
    assert solution.achieved_increase == 4


@pytest.mark.parametrize("budget, increase", [(0, 0), (2, 1), (3, 2)])
def test_uniform_budgeted_exact_on_triangle(triangle, budget, increase):
    assert uniform_budgeted_exact(triangle, budget).achieved_increase == increase


def test_uniform_solvers_reject_mixed_weights(weighted_triangle):
    with pytest.raises(UniformWeightError, match="budgeted_approx or targeted_approx"):
        uniform_targeted_exact(weighted_triangle, 1)
    with pytest.raises(UniformWeightError):
        uniform_budgeted_exact(weighted_triangle, 1)


def test_uniform_solvers_reject_low_caps():
    g = WeightedGraph.from_edges(2, [(0, 1, 0, 1, 1)])
    with pytest.raises(UniformWeightError, match="caps below 2"):
        uniform_budgeted_exact(g, 2)


@pytest.mark.parametrize("seed", range(8))
def test_uniform_exact_solvers_match_oracles(seed):
    rng = random.Random(700 + seed)
    g = uniform_graph(rng, rng.randint(2, 4), rng.randint(0, 2))
    budget = rng.randint(0, 5)
    target = rng.randint(1, 3)
    assert (
        uniform_budgeted_exact(g, budget).achieved_increase
        == brute_budgeted(g, budget).achieved_increase
    )
    assert uniform_targeted_exact(g, target).cost == brute_targeted(g, target).cost


def test_halfeps(triangle, path):
    assert uniform_halfeps_approx(triangle, 3, Fraction(1, 4)).achieved_increase == 2
    assert uniform_halfeps_approx(triangle, 0, Fraction(1, 4)).achieved_increase == 0
    assert uniform_halfeps_approx(path, 5, Fraction(1, 10)).achieved_increase == 5
    with pytest.raises(FortifyError, match="eps must be positive"):
        uniform_halfeps_approx(triangle, 3, 0)


@pytest.mark.parametrize("seed", range(6))
def test_halfeps_guarantee(seed):
    rng = random.Random(800 + seed)
    g = uniform_graph(rng, rng.randint(2, 4), rng.randint(0, 2))
    budget = rng.randint(0, 5)
    eps = Fraction(1, rng.randint(3, 6))
    best = brute_budgeted(g, budget).achieved_increase
    assert uniform_halfeps_approx(g, budget, eps).achieved_increase >= (Fraction(1, 2) - eps) * best


def test_mincut_heuristic(triangle, path):
    solution = mincut_lift_heuristic(triangle, 3)
    assert solution.achieved_increase == 1
    assert solution.cost == 2
    assert coverage(solution.perturbation.amounts, triangle) == 1
    assert mincut_lift_heuristic(triangle, 1).achieved_increase == 0
    assert mincut_lift_heuristic(path, 4).achieved_increase == 4
