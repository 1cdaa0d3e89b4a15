"""
Brute-force oracles, the hardness gadgets and the optimal-scheme structure check.

Everything here enumerates; the size guards in ``Limits`` keep it to desk-scale inputs.
"""

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
from networkx.utils import UnionFind

from .approx import DiscreteSolution, discrete_solution
from .config import Limits, current_limits
from .errors import (
    FortifyError,
    GraphError,
    NoLiftableSetError,
    SizeGuardError,
    StrengthError,
    UnreachableTargetError,
)
from .flows import FlowNetwork, Upgrade, max_flow, shortest_path_length
from .graph import (
    CompactedGraph,
    Perturbation,
    WeightedGraph,
    current_weights,
    mst_edges,
    tree_weight,
)
from .raise_mst import raise_mst
from .strength import CostOverride, Partition

logger = logging.getLogger(__name__)


class _Budget:
    """Counts evaluated candidates against the oracle guard."""

    def __init__(self, limits: Limits, what: str):
        self.left = limits.max_oracle_candidates
        self.what = what

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise SizeGuardError(f"{self.what} exceeds the oracle candidate guard")


def _layer(costs: Sequence[int], bounds: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """Vectors x <= bounds with sum(costs * x) == total, in lexicographic order."""
    m = len(costs)
    reach = [0] * (m + 1)
    for i in reversed(range(m)):
        reach[i] = reach[i + 1] + costs[i] * bounds[i]
    x = [0] * m

    def place(i: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if i == m:
            if remaining == 0:
                yield tuple(x)
            return
        if remaining > reach[i]:
            return
        for amount in range(min(bounds[i], remaining // costs[i]) + 1):
            x[i] = amount
            yield from place(i + 1, remaining - amount * costs[i])
        x[i] = 0

    yield from place(0, total)


def _as_perturbation(vector: Sequence[int]) -> Perturbation:
    return Perturbation(dict(enumerate(vector)), integral=True)


def brute_targeted(
    g: WeightedGraph, target: int, *, limits: Limits | None = None
) -> DiscreteSolution:
    """Cheapest integral perturbation raising the MST weight by ``target``; lexicographic on ties."""
    limits = current_limits(limits)
    if target < 0:
        raise FortifyError(f"target must be non-negative, got {target}")
    if target > limits.max_oracle_target:
        raise SizeGuardError(
            f"target {target} exceeds the oracle guard of {limits.max_oracle_target}"
        )
    base = [edge.weight for edge in g.edges]
    start = tree_weight(g, base)
    costs = [edge.cost for edge in g.edges]
    bounds = [int(min(edge.cap, g.max_weight - edge.weight + target)) for edge in g.edges]
    most = sum(c * b for c, b in zip(costs, bounds, strict=True))
    budget = _Budget(limits, "brute_targeted")
    for total in range(most + 1):
        for vector in _layer(costs, bounds, total):
            budget.spend()
            weights = [w + a for w, a in zip(base, vector, strict=True)]
            if tree_weight(g, weights) - start >= target:
                logger.debug("brute_targeted: cost %s reaches %s", total, target)
                return discrete_solution(g, _as_perturbation(vector))
    best = tree_weight(g, [w + b for w, b in zip(base, bounds, strict=True)]) - start
    raise UnreachableTargetError(
        f"target {target} is unreachable under caps; the maximum is {best}", max_increase=best
    )


def brute_budgeted(
    g: WeightedGraph, budget: int, *, limits: Limits | None = None
) -> DiscreteSolution:
    """Largest integral MST increase within ``budget``; cheapest, then lexicographic, on ties."""
    limits = current_limits(limits)
    if budget < 0:
        raise FortifyError(f"budget must be non-negative, got {budget}")
    base = [edge.weight for edge in g.edges]
    start = tree_weight(g, base)
    costs = [edge.cost for edge in g.edges]
    bounds = [int(min(edge.cap, budget // edge.cost)) for edge in g.edges]
    best_vector = tuple(0 for _ in g.edges)
    best_increase = Fraction(0)
    counter = _Budget(limits, "brute_budgeted")
    for total in range(budget + 1):
        for vector in _layer(costs, bounds, total):
            counter.spend()
            increase = tree_weight(g, [w + a for w, a in zip(base, vector, strict=True)]) - start
            if increase > best_increase:
                best_vector, best_increase = vector, increase
    return discrete_solution(g, _as_perturbation(best_vector))


def _all_partitions(items: Sequence[int]) -> Iterator[list[frozenset[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for size in range(len(rest) + 1):
        for others in itertools.combinations(rest, size):
            block = frozenset((first, *others))
            remaining = [item for item in rest if item not in block]
            for tail in _all_partitions(remaining):
                yield [block, *tail]


def brute_strength(
    h: CompactedGraph, costs: CostOverride | None = None, *, limits: Limits | None = None
) -> tuple[Fraction, Partition]:
    """Exhaustive strength over every vertex partition with at least two parts."""
    limits = current_limits(limits)
    if h.vertex_count < 2:
        raise StrengthError("strength needs a compacted graph with at least two vertices")
    if h.vertex_count > limits.max_oracle_vertices:
        raise SizeGuardError(
            f"brute_strength over {h.vertex_count} vertices exceeds the guard of "
            f"{limits.max_oracle_vertices}"
        )
    best = None
    for partition in _all_partitions(list(range(h.vertex_count))):
        if len(partition) < 2:
            continue
        shore = {vertex: position for position, block in enumerate(partition) for vertex in block}
        cut_cost = 0
        allowed = True
        for edge in h.edges:
            if shore[edge.u] == shore[edge.v]:
                continue
            cost = edge.cost if costs is None else costs.get(edge.index, edge.cost)
            if cost is None:
                allowed = False
                break
            cut_cost += cost
        if not allowed:
            continue
        ratio = Fraction(cut_cost, len(partition) - 1)
        if best is None or ratio < best[0]:
            best = (ratio, sorted(partition, key=min))
    if best is None:
        raise NoLiftableSetError("every edge of the compacted graph is saturated")
    return best


def greedy_oracle_increase(
    g: WeightedGraph, budget: Fraction | int, *, limits: Limits | None = None
) -> Fraction:
    """Continuous optimum recomputed with exhaustive strength."""

    def strength_fn(h: CompactedGraph, costs: CostOverride | None):
        return brute_strength(h, costs, limits=limits)

    return raise_mst(g, budget, strength_fn=strength_fn, limits=limits).increase


def spanning_trees(g: WeightedGraph) -> Iterator[tuple[int, ...]]:
    for subset in itertools.combinations(range(g.edge_count), g.vertex_count - 1):
        components = UnionFind(range(g.vertex_count))
        for index in subset:
            edge = g.edges[index]
            if components[edge.u] == components[edge.v]:
                break
            components.union(edge.u, edge.v)
        else:
            yield subset


def minimum_spanning_trees(
    g: WeightedGraph, x: Perturbation | None = None
) -> list[frozenset[int]]:
    """Every minimum spanning tree, by exhaustive enumeration."""
    weights = current_weights(g, x)
    trees = [(sum(weights[i] for i in tree), frozenset(tree)) for tree in spanning_trees(g)]
    lightest = min(weight for weight, _ in trees)
    return [tree for weight, tree in trees if weight == lightest]


def brute_coverage(edge_ids, g: WeightedGraph, x: Perturbation | None = None) -> int:
    ids = g.check_edge_ids(edge_ids)
    return min(len(tree & ids) for tree in minimum_spanning_trees(g, x))


def brute_min_k_cut(g: WeightedGraph, k: int, *, limits: Limits | None = None) -> int:
    """Cost of the cheapest edge set leaving at least ``k`` components, over all edge subsets."""
    limits = current_limits(limits)
    if not 1 <= k <= g.vertex_count:
        raise FortifyError(f"k must lie in [1, {g.vertex_count}], got {k}")
    if 2**g.edge_count > limits.max_oracle_candidates:
        raise SizeGuardError(f"{g.edge_count} edges exceed the oracle candidate guard")
    best = None
    for mask in range(2**g.edge_count):
        removed = [index for index in range(g.edge_count) if mask >> index & 1]
        cost = g.cost_of(removed)
        if best is not None and cost >= best:
            continue
        graph = g.multigraph()
        graph.remove_edges_from((g.edges[i].u, g.edges[i].v, i) for i in removed)
        if nx.number_connected_components(graph) >= k:
            best = cost
    return best


def gen_kcut_gadget(base: WeightedGraph, clique_size: int) -> WeightedGraph:
    """Attaches a clique to both ends of every base edge.

    Base edges get weight 0 and clique edges weight 1; every cost is 1.
    """
    if clique_size < 2:
        raise FortifyError(f"clique size must be at least 2, got {clique_size}")
    if not base.edges:
        raise GraphError("the gadget needs a base graph with at least one edge")
    edges = [(edge.u, edge.v, 0, 1) for edge in base.edges]
    next_vertex = base.vertex_count
    for edge in base.edges:
        clique = list(range(next_vertex, next_vertex + clique_size))
        next_vertex += clique_size
        edges.extend((a, b, 1, 1) for a, b in itertools.combinations(clique, 2))
        for vertex in clique:
            edges.append((vertex, edge.u, 1, 1))
            edges.append((vertex, edge.v, 1, 1))
    return WeightedGraph.from_edges(next_vertex, edges)


def gen_mmstu_instance(base: WeightedGraph) -> WeightedGraph:
    """Zero weights, unit costs and unit caps on the base graph's edges."""
    return WeightedGraph.from_edges(
        base.vertex_count, [(edge.u, edge.v, 0, 1, 1) for edge in base.edges]
    )


def kcut_via_gadget(
    base: WeightedGraph, k: int, clique_size: int, *, limits: Limits | None = None
) -> int:
    return brute_targeted(gen_kcut_gadget(base, clique_size), k - 1, limits=limits).cost


def kcut_via_mmstu_sweep(base: WeightedGraph, k: int, *, limits: Limits | None = None) -> int:
    """Smallest budget whose optimal capped lift raises the MST by ``k - 1``."""
    instance = gen_mmstu_instance(base)
    for budget in range(instance.edge_count + 1):
        if brute_budgeted(instance, budget, limits=limits).achieved_increase >= k - 1:
            return budget
    raise UnreachableTargetError(
        f"{k} components are out of reach", max_increase=instance.vertex_count - 1
    )


def _flow_vectors(net: FlowNetwork, budget: int, limits: Limits) -> Iterator[dict[int, int]]:
    costs = [arc.cost for arc in net.arcs]
    bounds = [int(min(arc.cap, budget // arc.cost)) for arc in net.arcs]
    counter = _Budget(limits, "flow oracle")
    for total in range(budget + 1):
        for vector in _layer(costs, bounds, total):
            counter.spend()
            yield {index: amount for index, amount in enumerate(vector) if amount}


def brute_flow_upgrade(
    net: FlowNetwork, budget: int, *, limits: Limits | None = None
) -> Upgrade:
    limits = current_limits(limits)
    best = None
    for amounts in _flow_vectors(net, budget, limits):
        value, _ = max_flow(net.upgraded(amounts))
        if best is None or value > best.value:
            best = Upgrade(amounts=amounts, value=value, cost=net.cost_of(amounts))
    return best


def brute_path_upgrade(
    net: FlowNetwork, budget: int, *, limits: Limits | None = None
) -> Upgrade:
    limits = current_limits(limits)
    best = None
    for amounts in _flow_vectors(net, budget, limits):
        length = shortest_path_length(net.upgraded(amounts))
        if best is None or length > best.value:
            best = Upgrade(amounts=amounts, value=length, cost=net.cost_of(amounts))
    return best


@dataclass(frozen=True, kw_only=True)
class StructureViolation:
    edge: int
    weight: Fraction
    cycle_max: Fraction


@dataclass(frozen=True, kw_only=True)
class StructureReport:
    tree: frozenset[int]
    checked: tuple[int, ...]
    violations: tuple[StructureViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def optimality_structure_check(g: WeightedGraph, x: Perturbation) -> StructureReport:
    """Checks that each lifted non-tree edge is exactly as heavy as the heaviest edge on its tree cycle."""
    weights = current_weights(g, x)
    tree = mst_edges(g, x)
    forest = nx.Graph()
    forest.add_nodes_from(range(g.vertex_count))
    for index in tree:
        forest.add_edge(g.edges[index].u, g.edges[index].v, index=index)
    checked = []
    violations = []
    for index, amount in x.amounts.items():
        if amount <= 0 or index in tree:
            continue
        edge = g.edges[index]
        path = nx.shortest_path(forest, edge.u, edge.v)
        cycle_max = max(weights[forest[a][b]["index"]] for a, b in itertools.pairwise(path))
        checked.append(index)
        if weights[index] != cycle_max:
            violations.append(
                StructureViolation(edge=index, weight=weights[index], cycle_max=cycle_max)
            )
    return StructureReport(
        tree=frozenset(tree), checked=tuple(checked), violations=tuple(violations)
    )
