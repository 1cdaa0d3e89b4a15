"""
Graph representation, Kruskal evaluation, weight-class compaction and coverage.
"""

import logging
import math
from collections.abc import Collection, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

import networkx as nx
from networkx.utils import UnionFind

from .errors import GraphError, PerturbationError, WeightClassError

logger = logging.getLogger(__name__)

Cap = int | float


@dataclass(frozen=True, kw_only=True)
class Edge:
    index: int
    u: int
    v: int
    weight: int
    cost: int
    cap: Cap = math.inf

    @property
    def capped(self) -> bool:
        return self.cap != math.inf


@dataclass(frozen=True)
class WeightedGraph:
    """Connected multigraph with base weights, unit upgrade costs and optional caps."""

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.vertex_count < 1:
            raise GraphError("a graph needs at least one vertex")
        for position, edge in enumerate(self.edges):
            if edge.index != position:
                raise GraphError(
                    f"edge ids must be dense: found id {edge.index} at position {position}"
                )
            for endpoint in (edge.u, edge.v):
                if not 0 <= endpoint < self.vertex_count:
                    raise GraphError(
                        f"edge {edge.index} has endpoint {endpoint} outside [0, {self.vertex_count})"
                    )
            if edge.u == edge.v:
                raise GraphError(f"edge {edge.index} is a self-loop at {edge.u}")
            if edge.weight < 0:
                raise GraphError(f"edge {edge.index} has negative weight {edge.weight}")
            if edge.cost < 1:
                raise GraphError(
                    f"edge {edge.index} has cost {edge.cost}; unit costs must be at least 1"
                )
            if edge.cap < 0:
                raise GraphError(f"edge {edge.index} has negative cap {edge.cap}")
        if not nx.is_connected(self.multigraph()):
            raise GraphError("graph is disconnected")

    @classmethod
    def from_edges(
        cls, vertex_count: int, edges: Iterable[Sequence[int | float]]
    ) -> "WeightedGraph":
        """Builds a graph from ``(u, v, weight, cost[, cap])`` tuples, numbering edges in order."""
        built = []
        for index, spec in enumerate(edges):
            if len(spec) not in (4, 5):
                raise GraphError(
                    f"edge {index} needs (u, v, weight, cost[, cap]), got {tuple(spec)}"
                )
            u, v, weight, cost = (int(value) for value in spec[:4])
            cap = spec[4] if len(spec) == 5 else math.inf
            built.append(
                Edge(
                    index=index,
                    u=u,
                    v=v,
                    weight=weight,
                    cost=cost,
                    cap=cap if cap == math.inf else int(cap),
                )
            )
        return cls(vertex_count, tuple(built))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def max_weight(self) -> int:
        return max((edge.weight for edge in self.edges), default=0)

    def is_uniform(self) -> bool:
        return len({edge.weight for edge in self.edges}) <= 1

    def cost_of(self, edge_ids: Iterable[int]) -> int:
        return sum(self.edges[index].cost for index in edge_ids)

    def check_edge_ids(self, edge_ids: Iterable[int]) -> frozenset[int]:
        ids = frozenset(edge_ids)
        unknown = sorted(index for index in ids if not 0 <= index < self.edge_count)
        if unknown:
            raise GraphError(f"unknown edge ids {unknown}")
        return ids

    def multigraph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, key=edge.index, cost=edge.cost)
        return graph


@dataclass(frozen=True)
class Perturbation:
    """Per-edge upgrade amounts; zero amounts are not stored."""

    amounts: Mapping[int, Fraction] = field(default_factory=dict)
    integral: bool = False

    def __post_init__(self):
        normalized = {}
        for index, amount in self.amounts.items():
            amount = Fraction(amount)
            if amount < 0:
                raise PerturbationError(f"edge {index} has negative amount {amount}")
            if self.integral and amount.denominator != 1:
                raise PerturbationError(
                    f"edge {index} has fractional amount {amount} in an integral perturbation"
                )
            if amount:
                normalized[index] = amount
        object.__setattr__(self, "amounts", MappingProxyType(dict(sorted(normalized.items()))))

    def amount(self, index: int) -> Fraction:
        return self.amounts.get(index, Fraction(0))

    def total_cost(self, g: WeightedGraph) -> Fraction:
        g.check_edge_ids(self.amounts)
        return sum(
            (g.edges[index].cost * amount for index, amount in self.amounts.items()),
            Fraction(0),
        )

    def weights(self, g: WeightedGraph) -> list[Fraction]:
        """Returns w + x, checking ids and caps."""
        g.check_edge_ids(self.amounts)
        for index, amount in self.amounts.items():
            if amount > g.edges[index].cap:
                raise PerturbationError(
                    f"edge {index} is lifted by {amount}, over its cap {g.edges[index].cap}"
                )
        return [Fraction(edge.weight) + self.amount(edge.index) for edge in g.edges]

    def lifted(self, edge_ids: Iterable[int], delta: Fraction | int) -> "Perturbation":
        delta = Fraction(delta)
        amounts = dict(self.amounts)
        for index in edge_ids:
            amounts[index] = amounts.get(index, Fraction(0)) + delta
        return Perturbation(amounts, integral=self.integral)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.amounts)


def current_weights(g: WeightedGraph, x: Perturbation | None = None) -> list[Fraction]:
    return (x or Perturbation()).weights(g)


def kruskal(
    g: WeightedGraph,
    weights: Sequence[Fraction | int],
    *,
    deferred: Collection[int] = (),
) -> list[int]:
    """Returns the edge ids of the canonical minimum spanning tree.

    Ties within a weight class are processed with ``deferred`` edges last, then by id.
    """
    order = sorted(
        range(g.edge_count),
        key=lambda index: (weights[index], index in deferred, index),
    )
    components = UnionFind(range(g.vertex_count))
    accepted = []
    for index in order:
        edge = g.edges[index]
        if components[edge.u] != components[edge.v]:
            components.union(edge.u, edge.v)
            accepted.append(index)
            if len(accepted) == g.vertex_count - 1:
                break
    return accepted


def tree_weight(g: WeightedGraph, weights: Sequence[Fraction | int]) -> Fraction:
    return sum((Fraction(weights[index]) for index in kruskal(g, weights)), Fraction(0))


def mst_weight(g: WeightedGraph, x: Perturbation | None = None) -> Fraction:
    return tree_weight(g, current_weights(g, x))


def mst_edges(g: WeightedGraph, x: Perturbation | None = None) -> list[int]:
    return kruskal(g, current_weights(g, x))


def coverage_for(
    g: WeightedGraph, weights: Sequence[Fraction | int], edge_ids: Collection[int]
) -> int:
    """Coverage of ``edge_ids`` under an explicit weight vector."""
    return sum(1 for index in kruskal(g, weights, deferred=edge_ids) if index in edge_ids)


def coverage(
    edge_ids: Iterable[int], g: WeightedGraph, x: Perturbation | None = None
) -> int:
    """Minimum number of edges of ``edge_ids`` contained in any minimum spanning tree."""
    ids = g.check_edge_ids(edge_ids)
    return coverage_for(g, current_weights(g, x), ids)


def sm_eq(index: int, g: WeightedGraph, x: Perturbation | None = None) -> frozenset[int]:
    g.check_edge_ids([index])
    weights = current_weights(g, x)
    return frozenset(other for other in range(g.edge_count) if weights[other] <= weights[index])


@dataclass(frozen=True, kw_only=True)
class CompactedEdge:
    index: int
    u: int
    v: int
    cost: int


@dataclass(frozen=True, kw_only=True)
class CompactedGraph:
    """The edges of one weight class over the classes contracted by lighter edges.

    Classes are numbered in order of their smallest original vertex.
    ``loops`` holds pivot-weight edges whose ends fall in the same class.
    """

    pivot: Fraction
    classes: tuple[frozenset[int], ...]
    edges: tuple[CompactedEdge, ...]
    loops: frozenset[int] = frozenset()

    @property
    def vertex_count(self) -> int:
        return len(self.classes)

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(edge.index for edge in self.edges)

    def class_of(self, vertex: int) -> int:
        for position, members in enumerate(self.classes):
            if vertex in members:
                return position
        raise GraphError(f"vertex {vertex} is not in the compacted graph")

    def members(self, class_ids: Iterable[int]) -> frozenset[int]:
        return frozenset().union(*(self.classes[position] for position in class_ids))

    def multigraph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, key=edge.index, cost=edge.cost)
        return graph

    def components(self) -> list[frozenset[int]]:
        found = [frozenset(part) for part in nx.connected_components(self.multigraph())]
        return sorted(found, key=min)

    @classmethod
    def build(
        cls,
        pivot: Fraction | int,
        classes: Sequence[frozenset[int]],
        edges: Iterable[tuple[int, int, int, int]],
    ) -> "CompactedGraph":
        """Builds a compacted graph directly from ``(edge_id, u, v, cost)`` tuples."""
        return cls(
            pivot=Fraction(pivot),
            classes=tuple(frozenset(members) for members in classes),
            edges=tuple(
                CompactedEdge(index=index, u=u, v=v, cost=cost) for index, u, v, cost in edges
            ),
        )


def compact(g: WeightedGraph, x: Perturbation | None, pivot: Fraction | int) -> CompactedGraph:
    weights = current_weights(g, x)
    pivot = Fraction(pivot)
    if pivot not in set(weights):
        raise WeightClassError(f"weight {pivot} does not occur in the current weights")
    contracted = UnionFind(range(g.vertex_count))
    for edge in g.edges:
        if weights[edge.index] < pivot:
            contracted.union(edge.u, edge.v)
    class_of_root: dict[int, int] = {}
    members: list[set[int]] = []
    vertex_class = []
    for vertex in range(g.vertex_count):
        root = contracted[vertex]
        if root not in class_of_root:
            class_of_root[root] = len(members)
            members.append(set())
        members[class_of_root[root]].add(vertex)
        vertex_class.append(class_of_root[root])
    surviving = []
    loops = set()
    for edge in g.edges:
        if weights[edge.index] != pivot:
            continue
        u, v = vertex_class[edge.u], vertex_class[edge.v]
        if u == v:
            loops.add(edge.index)
            continue
        surviving.append(CompactedEdge(index=edge.index, u=u, v=v, cost=edge.cost))
    return CompactedGraph(
        pivot=pivot,
        classes=tuple(frozenset(part) for part in members),
        edges=tuple(surviving),
        loops=frozenset(loops),
    )


def components_increase(edge_ids: Iterable[int], h: CompactedGraph) -> int:
    ids = frozenset(edge_ids)
    missing = sorted(ids - h.edge_ids - h.loops)
    if missing:
        raise GraphError(f"edges {missing} are not in the compacted graph at {h.pivot}")
    graph = h.multigraph()
    before = nx.number_connected_components(graph)
    graph.remove_edges_from(
        (edge.u, edge.v, edge.index) for edge in h.edges if edge.index in ids
    )
    return nx.number_connected_components(graph) - before
