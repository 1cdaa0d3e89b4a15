"""
Budgeted upgrading of max-flow capacities and of shortest-path lengths.
"""

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, replace

import networkx as nx

from .errors import ConsistencyError, FlowError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class Arc:
    index: int
    tail: int
    head: int
    base: int
    cost: int
    cap: int | float = math.inf


@dataclass(frozen=True)
class FlowNetwork:
    """Directed multigraph; ``base`` is a capacity for flow upgrades and a length for path upgrades."""

    vertex_count: int
    arcs: tuple[Arc, ...]
    source: int
    sink: int

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        for endpoint in (self.source, self.sink):
            if not 0 <= endpoint < self.vertex_count:
                raise FlowError(f"terminal {endpoint} outside [0, {self.vertex_count})")
        if self.source == self.sink:
            raise FlowError("source and sink must differ")
        for position, arc in enumerate(self.arcs):
            if arc.index != position:
                raise FlowError(f"arc ids must be dense: found {arc.index} at {position}")
            if not (0 <= arc.tail < self.vertex_count and 0 <= arc.head < self.vertex_count):
                raise FlowError(f"arc {arc.index} has an endpoint outside the network")
            if arc.tail == arc.head:
                raise FlowError(f"arc {arc.index} is a loop")
            if arc.base < 0 or arc.cap < 0:
                raise FlowError(f"arc {arc.index} has a negative base value or cap")
            if arc.cost < 1:
                raise FlowError(f"arc {arc.index} has cost {arc.cost}; costs must be at least 1")

    @classmethod
    def from_arcs(
        cls,
        vertex_count: int,
        arcs: Iterable[Sequence[int | float]],
        *,
        source: int,
        sink: int,
    ) -> "FlowNetwork":
        """Builds a network from ``(tail, head, base, cost[, cap])`` tuples."""
        built = []
        for index, spec in enumerate(arcs):
            tail, head, base, cost = (int(value) for value in spec[:4])
            cap = spec[4] if len(spec) > 4 else math.inf
            built.append(
                Arc(
                    index=index,
                    tail=tail,
                    head=head,
                    base=base,
                    cost=cost,
                    cap=cap if cap == math.inf else int(cap),
                )
            )
        return cls(vertex_count, tuple(built), source, sink)

    def upgraded(self, amounts: Mapping[int, int]) -> "FlowNetwork":
        arcs = []
        for arc in self.arcs:
            amount = amounts.get(arc.index, 0)
            if amount < 0 or amount > arc.cap:
                raise FlowError(f"arc {arc.index} cannot be upgraded by {amount}")
            arcs.append(replace(arc, base=arc.base + amount))
        return replace(self, arcs=tuple(arcs))

    def cost_of(self, amounts: Mapping[int, int]) -> int:
        return sum(self.arcs[index].cost * amount for index, amount in amounts.items())


@dataclass(frozen=True, kw_only=True)
class ExpandedFlow:
    """A flow on the doubled network: per arc, units on the free and on the paid lane."""

    value: int
    free: dict[int, int]
    paid: dict[int, int]
    cost: int


@dataclass(frozen=True, kw_only=True)
class Upgrade:
    amounts: dict[int, int]
    value: int
    cost: int


def max_flow(net: FlowNetwork) -> tuple[int, dict[int, int]]:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(net.vertex_count))
    for arc in net.arcs:
        if graph.has_edge(arc.tail, arc.head):
            graph[arc.tail][arc.head]["capacity"] += arc.base
        else:
            graph.add_edge(arc.tail, arc.head, capacity=arc.base)
    value, flow = nx.maximum_flow(graph, net.source, net.sink)
    remaining = {(u, v): amount for u, targets in flow.items() for v, amount in targets.items()}
    per_arc = {}
    for arc in net.arcs:
        share = min(arc.base, remaining[arc.tail, arc.head])
        remaining[arc.tail, arc.head] -= share
        per_arc[arc.index] = share
    return value, per_arc


def min_cost_flow(net: FlowNetwork, demand: int) -> ExpandedFlow:
    """Cheapest flow of ``demand`` units when each arc also offers a paid lane up to its cap."""
    if demand < 0:
        raise FlowError(f"demand must be non-negative, got {demand}")
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(net.vertex_count), demand=0)
    graph.nodes[net.source]["demand"] = -demand
    graph.nodes[net.sink]["demand"] = demand
    for arc in net.arcs:
        if arc.base:
            graph.add_edge(arc.tail, arc.head, key=(arc.index, "free"), capacity=arc.base, weight=0)
        if arc.cap == math.inf:
            graph.add_edge(arc.tail, arc.head, key=(arc.index, "paid"), weight=arc.cost)
        elif arc.cap:
            graph.add_edge(
                arc.tail, arc.head, key=(arc.index, "paid"), capacity=arc.cap, weight=arc.cost
            )
    try:
        cost, flow = nx.network_simplex(graph)
    except nx.NetworkXUnfeasible as error:
        raise FlowError(f"no flow of {demand} units fits the expanded network") from error
    lanes = {"free": {}, "paid": {}}
    for tail, targets in flow.items():
        for head, keyed in targets.items():
            for (index, lane), amount in keyed.items():
                if amount:
                    lanes[lane][index] = amount
    return ExpandedFlow(value=demand, free=lanes["free"], paid=lanes["paid"], cost=cost)


def mmf_upgrade(net: FlowNetwork, budget: int) -> Upgrade:
    """Integral capacity upgrades within ``budget`` maximizing the max-flow value."""
    if budget < 0:
        raise FlowError(f"budget must be non-negative, got {budget}")
    # Paid lanes never need more than the budget buys.
    bounded = replace(
        net,
        arcs=tuple(replace(arc, cap=min(arc.cap, budget // arc.cost)) for arc in net.arcs),
    )
    base_value, _ = max_flow(net)
    ceiling, _ = max_flow(bounded.upgraded({arc.index: arc.cap for arc in bounded.arcs}))
    best = min_cost_flow(bounded, base_value)
    lo, hi = base_value + 1, ceiling
    while lo <= hi:
        middle = (lo + hi) // 2
        attempt = min_cost_flow(bounded, middle)
        logger.debug("flow value %s costs %s", middle, attempt.cost)
        if attempt.cost <= budget:
            best, lo = attempt, middle + 1
        else:
            hi = middle - 1
    amounts = dict(best.paid)
    value, _ = max_flow(net.upgraded(amounts))
    if value < best.value:
        raise ConsistencyError(f"upgraded network carries {value}, expected {best.value}")
    return Upgrade(amounts=amounts, value=value, cost=net.cost_of(amounts))


def _length_graph(net: FlowNetwork) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(net.vertex_count))
    for arc in net.arcs:
        graph.add_edge(arc.tail, arc.head, key=arc.index, weight=arc.base)
    return graph


def shortest_path_length(net: FlowNetwork) -> int:
    try:
        return nx.shortest_path_length(_length_graph(net), net.source, net.sink, weight="weight")
    except nx.NetworkXNoPath as error:
        raise FlowError(f"sink {net.sink} is unreachable from source {net.source}") from error


def _lengthening(net: FlowNetwork, length: int) -> tuple[int, dict[int, int]] | None:
    """Cheapest lengthening making every source-sink path at least ``length``, or None if caps forbid it.

    Solved as a min-cost circulation; the potentials of the optimal residual
    graph give the lengthenings.
    """
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(net.vertex_count))
    for arc in net.arcs:
        graph.add_edge(arc.tail, arc.head, key=(arc.index, "base"), capacity=arc.cost, weight=arc.base)
        if arc.cap != math.inf:
            graph.add_edge(arc.tail, arc.head, key=(arc.index, "capped"), weight=arc.base + arc.cap)
    graph.add_edge(net.sink, net.source, key="return", weight=-length)
    try:
        cost, flow = nx.network_simplex(graph)
    except nx.NetworkXUnbounded:
        return None
    root = net.vertex_count
    residual = nx.DiGraph()
    residual.add_nodes_from(range(net.vertex_count + 1))

    def relax(u: int, v: int, weight: int):
        if not residual.has_edge(u, v) or residual[u][v]["weight"] > weight:
            residual.add_edge(u, v, weight=weight)

    for tail, head, key, data in graph.edges(keys=True, data=True):
        amount = flow[tail][head][key]
        if amount < data.get("capacity", math.inf):
            relax(tail, head, data["weight"])
        if amount > 0:
            relax(head, tail, -data["weight"])
    for vertex in range(net.vertex_count):
        relax(root, vertex, 0)
    distance = nx.single_source_bellman_ford_path_length(residual, root)
    amounts = {}
    for arc in net.arcs:
        amount = distance[arc.head] - distance[arc.tail] - arc.base
        if amount > 0:
            amounts[arc.index] = amount
    if net.cost_of(amounts) != -cost:
        raise ConsistencyError(
            f"lengthening costs {net.cost_of(amounts)}, circulation says {-cost}"
        )
    return -cost, amounts


def msp_upgrade(net: FlowNetwork, budget: int) -> Upgrade:
    """Integral lengthenings within ``budget`` maximizing the shortest source-sink path."""
    if budget < 0:
        raise FlowError(f"budget must be non-negative, got {budget}")
    base_length = shortest_path_length(net)
    amounts: dict[int, int] = {}
    for length in range(base_length + 1, base_length + budget + 1):
        plan = _lengthening(net, length)
        if plan is None or plan[0] > budget:
            break
        amounts = plan[1]
        logger.debug("path length %s costs %s", length, plan[0])
    reached = shortest_path_length(net.upgraded(amounts))
    return Upgrade(amounts=amounts, value=reached, cost=net.cost_of(amounts))
