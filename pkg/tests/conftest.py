import os
import random
from unittest import mock

import pytest

from mst_fortify.graph import WeightedGraph


@pytest.fixture(autouse=True)
def mock_size_guards():
    with mock.patch.dict(
        os.environ,
        {
            "MST_FORTIFY_MAX_PARTITION_VERTICES": "10",
            "MST_FORTIFY_MAX_CUT_VERTICES": "12",
            "MST_FORTIFY_MAX_ORACLE_VERTICES": "8",
            "MST_FORTIFY_MAX_ORACLE_TARGET": "5",
            "MST_FORTIFY_MAX_ORACLE_CANDIDATES": "2000000",
        },
    ):
        yield


@pytest.fixture
def triangle():
    """Unit triangle: edges (0,1), (0,2), (1,2) with weight 0 and cost 1."""
    return WeightedGraph.from_edges(3, [(0, 1, 0, 1), (0, 2, 0, 1), (1, 2, 0, 1)])


@pytest.fixture
def path():
    """Path 0-1-2-3 with weight 0 and cost 1."""
    return WeightedGraph.from_edges(4, [(0, 1, 0, 1), (1, 2, 0, 1), (2, 3, 0, 1)])


@pytest.fixture
def weighted_triangle():
    """A=0, B=1, C=2 with AB weight 2 cost 20, AC and BC weight 1 cost 1."""
    return WeightedGraph.from_edges(3, [(0, 1, 2, 20), (0, 2, 1, 1), (1, 2, 1, 1)])


@pytest.fixture
def four_cycle():
    return WeightedGraph.from_edges(
        4, [(0, 1, 0, 1), (1, 2, 0, 1), (2, 3, 0, 1), (3, 0, 0, 1)]
    )


def random_graph(
    rng: random.Random,
    *,
    vertices: int,
    extra_edges: int,
    max_weight: int = 2,
    max_cost: int = 2,
    cap_chance: float = 0.0,
) -> WeightedGraph:
    """A random spanning tree plus ``extra_edges`` parallel or chord edges."""
    pairs = [(rng.randrange(v), v) for v in range(1, vertices)]
    for _ in range(extra_edges):
        u, v = rng.sample(range(vertices), 2)
        pairs.append((u, v))
    edges = []
    for u, v in pairs:
        spec = [u, v, rng.randint(0, max_weight), rng.randint(1, max_cost)]
        if rng.random() < cap_chance:
            spec.append(rng.randint(0, 2))
        edges.append(tuple(spec))
    return WeightedGraph.from_edges(vertices, edges)


@pytest.fixture
def graph_factory():
    return random_graph
