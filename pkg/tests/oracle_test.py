import random
from fractions import Fraction

import pytest

from mst_fortify.config import Limits
from mst_fortify.errors import FortifyError, GraphError, SizeGuardError, UnreachableTargetError
from mst_fortify.graph import CompactedGraph, Perturbation, WeightedGraph, mst_weight
from mst_fortify.oracle import (
    brute_budgeted,
    brute_min_k_cut,
    brute_strength,
    brute_targeted,
    gen_kcut_gadget,
    gen_mmstu_instance,
    kcut_via_gadget,
    kcut_via_mmstu_sweep,
    minimum_spanning_trees,
    optimality_structure_check,
    spanning_trees,
)


def test_brute_targeted(triangle, path):
    solution = brute_targeted(triangle, 1)
    assert solution.cost == 2
    assert solution.achieved_increase == 1
    assert brute_targeted(path, 3).cost == 3


def test_brute_targeted_on_weighted_triangle(weighted_triangle):
    solution = brute_targeted(weighted_triangle, 3)
    assert solution.cost == 4
    assert solution.perturbation.as_dict() == {1: 2, 2: 2}
    assert {0, 1} in minimum_spanning_trees(weighted_triangle, solution.perturbation)


def test_budgeted_lift_switches_the_tree(weighted_triangle):
    assert minimum_spanning_trees(weighted_triangle) == [frozenset({1, 2})]
    solution = brute_budgeted(weighted_triangle, 4)
    assert solution.achieved_increase == 3
    assert solution.cost == 4
    trees = minimum_spanning_trees(weighted_triangle, solution.perturbation)
    assert trees
    assert all(not {1, 2} <= tree for tree in trees)


def test_brute_targeted_unreachable():
    g = WeightedGraph.from_edges(2, [(0, 1, 0, 1, 1)])
    with pytest.raises(UnreachableTargetError, match="maximum is 1"):
        brute_targeted(g, 2)


def test_brute_targeted_guard(triangle):
    with pytest.raises(SizeGuardError, match="exceeds the oracle guard of 5"):
        brute_targeted(triangle, 6)
    with pytest.raises(SizeGuardError, match="candidate guard"):
        brute_targeted(triangle, 2, limits=Limits(max_oracle_candidates=3))


def test_brute_budgeted(triangle, path):
    assert brute_budgeted(triangle, 3).achieved_increase == 2
    assert brute_budgeted(triangle, 0).achieved_increase == 0
    assert brute_budgeted(path, 4).achieved_increase == 4


def test_brute_strength(triangle):
    star = CompactedGraph.build(
        0, [frozenset({v}) for v in range(4)], [(0, 0, 1, 1), (1, 0, 2, 1), (2, 0, 3, 1)]
    )
    assert brute_strength(star)[0] == 1
    single = CompactedGraph.build(0, [frozenset({0}), frozenset({1})], [(0, 0, 1, 7)])
    assert brute_strength(single)[0] == 7
    assert brute_strength(star, limits=Limits(max_oracle_vertices=4))[0] == 1
    with pytest.raises(SizeGuardError):
        brute_strength(star, limits=Limits(max_oracle_vertices=3))


def test_spanning_trees(triangle, four_cycle):
    assert len(list(spanning_trees(triangle))) == 3
    assert len(list(spanning_trees(four_cycle))) == 4


def test_brute_min_k_cut(triangle, path):
    assert brute_min_k_cut(triangle, 2) == 2
    assert brute_min_k_cut(triangle, 3) == 3
    assert brute_min_k_cut(path, 4) == 3
    assert brute_min_k_cut(path, 1) == 0


def test_kcut_gadget_shape(triangle):
    gadget = gen_kcut_gadget(triangle, 2)
    assert gadget.vertex_count == 9
    assert gadget.edge_count == 18
    assert mst_weight(gadget) == 6
    assert all(edge.cost == 1 for edge in gadget.edges)


def test_kcut_gadget_on_single_edge():
    gadget = gen_kcut_gadget(WeightedGraph.from_edges(2, [(0, 1, 3, 4)]), 3)
    assert gadget.vertex_count == 5
    assert [edge.weight for edge in gadget.edges[:1]] == [0]


def test_kcut_gadget_rejections():
    with pytest.raises(GraphError, match="at least one edge"):
        gen_kcut_gadget(WeightedGraph(1, ()), 3)
    with pytest.raises(FortifyError, match="at least 2"):
        gen_kcut_gadget(WeightedGraph.from_edges(2, [(0, 1, 0, 1)]), 1)


def test_kcut_gadget_correspondence(triangle):
    assert kcut_via_gadget(triangle, 2, 4) == brute_min_k_cut(triangle, 2)
    two_edges = WeightedGraph.from_edges(3, [(0, 1, 0, 1), (1, 2, 0, 1)])
    assert kcut_via_gadget(two_edges, 3, 3) == brute_min_k_cut(two_edges, 3)


def test_kcut_gadget_four_components(path):
    assert kcut_via_gadget(path, 4, 4) == brute_min_k_cut(path, 4) == 3


@pytest.mark.parametrize("seed", range(3))
def test_kcut_gadget_matches_min_k_cut(graph_factory, seed):
    rng = random.Random(1200 + seed)
    vertices = rng.choice([3, 4])
    g = graph_factory(rng, vertices=vertices, extra_edges=4 - vertices)
    assert g.edge_count == 3
    for k in range(2, vertices + 1):
        assert kcut_via_gadget(g, k, 4) == brute_min_k_cut(gen_mmstu_instance(g), k)


def test_mmstu_sweep(triangle, path):
    instance = gen_mmstu_instance(triangle)
    assert [brute_budgeted(instance, budget).achieved_increase for budget in range(4)] == [0, 0, 1, 2]
    assert kcut_via_mmstu_sweep(triangle, 2) == 2
    assert kcut_via_mmstu_sweep(triangle, 3) == 3
    assert kcut_via_mmstu_sweep(path, 4) == 3


@pytest.mark.parametrize("seed", range(6))
def test_mmstu_sweep_matches_min_k_cut(graph_factory, seed):
    rng = random.Random(1000 + seed)
    g = graph_factory(rng, vertices=4, extra_edges=2)
    for k in range(2, 5):
        assert kcut_via_mmstu_sweep(g, k) == brute_min_k_cut(gen_mmstu_instance(g), k)


def test_structure_check_on_weighted_triangle(weighted_triangle):
    solution = brute_targeted(weighted_triangle, 3)
    report = optimality_structure_check(weighted_triangle, solution.perturbation)
    assert report.passed
    assert report.checked == (2,)


def test_structure_check_is_vacuous_for_tree_lifts(path):
    report = optimality_structure_check(path, Perturbation({0: 3}))
    assert report.passed
    assert report.checked == ()


def test_structure_check_flags_wasted_lifts(triangle):
    report = optimality_structure_check(triangle, Perturbation({0: 2, 1: 1}, integral=True))
    assert not report.passed
    [violation] = report.violations
    assert violation.edge == 0
    assert violation.weight == 2
    assert violation.cycle_max == 1


@pytest.mark.parametrize("seed", range(8))
def test_structure_check_passes_on_budgeted_optima(graph_factory, seed):
    rng = random.Random(1100 + seed)
    g = graph_factory(rng, vertices=rng.randint(3, 5), extra_edges=rng.randint(1, 2))
    solution = brute_budgeted(g, rng.randint(1, 4))
    assert optimality_structure_check(g, solution.perturbation).passed


@pytest.mark.parametrize("seed", range(8))
def test_structure_check_passes_on_targeted_optima(graph_factory, seed):
    rng = random.Random(1300 + seed)
    g = graph_factory(rng, vertices=rng.randint(3, 5), extra_edges=rng.randint(1, 2))
    solution = brute_targeted(g, rng.randint(1, 3))
    assert optimality_structure_check(g, solution.perturbation).passed


def test_brute_rejects_negative_inputs(triangle):
    with pytest.raises(FortifyError, match="non-negative"):
        brute_budgeted(triangle, -1)
    with pytest.raises(FortifyError, match="non-negative"):
        brute_targeted(triangle, -1)
    assert brute_targeted(triangle, 0).cost == Fraction(0)
