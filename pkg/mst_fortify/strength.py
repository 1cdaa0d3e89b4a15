"""
Minimum inc_cost sets, graph strength and tolerance.
"""

import logging
import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from networkx.utils import UnionFind

from .config import Limits, current_limits
from .errors import NoLiftableSetError, SizeGuardError, StrengthError
from .graph import (
    CompactedGraph,
    Perturbation,
    WeightedGraph,
    compact,
    coverage_for,
    current_weights,
)
from .partitions import set_partitions

logger = logging.getLogger(__name__)

Partition = list[frozenset[int]]
# Edge id -> cost, or None for an edge that must stay inside a shore.
CostOverride = Mapping[int, int | None]
StrengthFn = Callable[[CompactedGraph, CostOverride | None], tuple[Fraction, Partition]]


@dataclass(frozen=True, kw_only=True)
class PartitionCertificate:
    """A partition of a compacted graph whose crossing edges form a minimum inc_cost set."""

    compacted: CompactedGraph
    shores: tuple[frozenset[int], ...]
    shore_costs: tuple[int, ...]
    edges: frozenset[int]
    cost: int

    @property
    def pivot(self) -> Fraction:
        return self.compacted.pivot

    @property
    def coverage(self) -> int:
        return len(self.shores) - 1

    @property
    def inc_cost(self) -> Fraction:
        return Fraction(self.cost, self.coverage)

    @property
    def sort_key(self) -> tuple:
        """Orders by inc_cost, then pivot, then larger coverage, then sorted edge ids."""
        return (self.inc_cost, self.pivot, -self.coverage, tuple(sorted(self.edges)))

    def shore_vertices(self, position: int) -> frozenset[int]:
        """Original vertices inside shore ``position``."""
        return self.compacted.members(self.shores[position])

    def shore_cut(self, position: int) -> frozenset[int]:
        shore = self.shores[position]
        return frozenset(
            edge.index
            for edge in self.compacted.edges
            if (edge.u in shore) != (edge.v in shore)
        )


def _quotient(
    h: CompactedGraph, costs: CostOverride | None
) -> tuple[list[list[int]], dict[int, int], list[tuple[int, int, int, int]]]:
    """Contracts forbidden edges; returns groups, vertex->group and the remaining edges."""
    merged = UnionFind(range(h.vertex_count))
    cut_edges = []
    for edge in h.edges:
        cost = edge.cost if costs is None else costs.get(edge.index, edge.cost)
        if cost is None:
            merged.union(edge.u, edge.v)
        else:
            cut_edges.append((edge.index, edge.u, edge.v, cost))
    groups = sorted((sorted(part) for part in merged.to_sets()), key=lambda part: part[0])
    group_of = {vertex: position for position, part in enumerate(groups) for vertex in part}
    return groups, group_of, cut_edges


def optimal_partitions(
    h: CompactedGraph, costs: CostOverride | None = None, *, limits: Limits | None = None
) -> tuple[Fraction, list[Partition]]:
    """Returns the strength of ``h`` and every partition attaining it.

    Partitions are listed finest first, then by their sorted crossing edge ids.
    """
    limits = current_limits(limits)
    if h.vertex_count < 2:
        raise StrengthError("strength needs a compacted graph with at least two vertices")
    groups, group_of, cut_edges = _quotient(h, costs)
    if len(groups) < 2:
        raise NoLiftableSetError("every edge of the compacted graph is saturated")
    if len(groups) > limits.max_partition_vertices:
        raise SizeGuardError(
            f"strength enumeration over {len(groups)} vertices exceeds the guard of "
            f"{limits.max_partition_vertices}"
        )
    best: Fraction | None = None
    found: list[tuple[tuple, Partition]] = []
    for blocks in set_partitions(range(len(groups))):
        if len(blocks) < 2:
            continue
        block_of = {group: position for position, block in enumerate(blocks) for group in block}
        crossing = []
        cut_cost = 0
        for index, u, v, cost in cut_edges:
            if block_of[group_of[u]] != block_of[group_of[v]]:
                crossing.append(index)
                cut_cost += cost
        ratio = Fraction(cut_cost, len(blocks) - 1)
        if best is not None and ratio > best:
            continue
        if best is None or ratio < best:
            best = ratio
            found = []
        partition = sorted(
            (frozenset(v for group in block for v in groups[group]) for block in blocks),
            key=min,
        )
        found.append(((-len(blocks), tuple(sorted(crossing))), partition))
    found.sort(key=lambda item: item[0])
    return best, [partition for _, partition in found]


def strength(
    h: CompactedGraph, costs: CostOverride | None = None, *, limits: Limits | None = None
) -> tuple[Fraction, Partition]:
    """Minimum over partitions P of c(δ(P)) / (|P| - 1), with a partition attaining it."""
    sigma, partitions = optimal_partitions(h, costs, limits=limits)
    return sigma, partitions[0]


def _restrict(h: CompactedGraph, component: frozenset[int]) -> tuple[CompactedGraph, list[int]]:
    """The connected piece of ``h`` on ``component``; returns it with its class numbering."""
    order = sorted(component)
    local = {position: i for i, position in enumerate(order)}
    return (
        CompactedGraph.build(
            h.pivot,
            [h.classes[position] for position in order],
            [
                (edge.index, local[edge.u], local[edge.v], edge.cost)
                for edge in h.edges
                if edge.u in component
            ],
        ),
        order,
    )


def _certificate(
    g: WeightedGraph,
    h: CompactedGraph,
    component: frozenset[int],
    order: Sequence[int],
    partition: Partition,
) -> PartitionCertificate:
    shores = [frozenset(order[i] for i in block) for block in partition]
    # Classes outside the component stay with the first shore.
    outside = frozenset(range(h.vertex_count)) - component
    shores[0] = shores[0] | outside
    shores.sort(key=min)
    shore_of = {vertex: position for position, shore in enumerate(shores) for vertex in shore}
    crossing = frozenset(
        edge.index for edge in h.edges if shore_of[edge.u] != shore_of[edge.v]
    )
    shore_costs = [0] * len(shores)
    for edge in h.edges:
        if shore_of[edge.u] != shore_of[edge.v]:
            shore_costs[shore_of[edge.u]] += edge.cost
            shore_costs[shore_of[edge.v]] += edge.cost
    return PartitionCertificate(
        compacted=h,
        shores=tuple(shores),
        shore_costs=tuple(shore_costs),
        edges=crossing,
        cost=g.cost_of(crossing),
    )


def saturated_edges(g: WeightedGraph, x: Perturbation) -> frozenset[int]:
    return frozenset(edge.index for edge in g.edges if x.amount(edge.index) >= edge.cap)


def min_inc_cost_candidates(
    g: WeightedGraph,
    x: Perturbation | None = None,
    *,
    strength_fn: StrengthFn | None = None,
    limits: Limits | None = None,
) -> list[PartitionCertificate]:
    """Returns every certificate of minimum inc_cost, in canonical order.

    Saturated edges never cross a returned partition. With ``strength_fn`` set,
    each component contributes only the partition that function returns.
    An empty list means no liftable set remains.
    """
    x = x or Perturbation()
    weights = current_weights(g, x)
    saturated = saturated_edges(g, x)
    candidates: list[PartitionCertificate] = []
    for pivot in sorted(set(weights)):
        h = compact(g, x, pivot)
        costs = {
            edge.index: None if edge.index in saturated else edge.cost for edge in h.edges
        }
        for component in h.components():
            if len(component) < 2:
                continue
            piece, order = _restrict(h, component)
            try:
                if strength_fn is None:
                    _, partitions = optimal_partitions(piece, costs, limits=limits)
                else:
                    partitions = [strength_fn(piece, costs)[1]]
            except NoLiftableSetError:
                continue
            candidates.extend(
                _certificate(g, h, component, order, partition) for partition in partitions
            )
    if not candidates:
        return []
    best = min(candidate.inc_cost for candidate in candidates)
    return sorted(
        (candidate for candidate in candidates if candidate.inc_cost == best),
        key=lambda candidate: candidate.sort_key,
    )


def min_inc_cost_set(
    g: WeightedGraph,
    x: Perturbation | None = None,
    *,
    strength_fn: StrengthFn | None = None,
    limits: Limits | None = None,
) -> PartitionCertificate:
    candidates = min_inc_cost_candidates(g, x, strength_fn=strength_fn, limits=limits)
    if not candidates:
        raise NoLiftableSetError("no liftable edge set remains; every edge is at its cap")
    return candidates[0]


def tolerance(
    cert: PartitionCertificate, g: WeightedGraph, x: Perturbation | None = None
) -> Fraction | float:
    """Largest lift of the certificate's edges that keeps their coverage unchanged."""
    weights = current_weights(g, x)
    ids = cert.edges
    base = coverage_for(g, weights, ids)
    for delta in sorted({weight - cert.pivot for weight in weights if weight > cert.pivot}):
        lifted = [
            weight + delta if index in ids else weight for index, weight in enumerate(weights)
        ]
        if coverage_for(g, lifted, ids) != base:
            return delta
    return math.inf


# Selection strategies among equally cheap certificates.
Selector = Callable[[Sequence[PartitionCertificate]], PartitionCertificate]


def finest_first(candidates: Sequence[PartitionCertificate]) -> PartitionCertificate:
    return candidates[0]


def coarsest_first(candidates: Sequence[PartitionCertificate]) -> PartitionCertificate:
    return min(
        candidates,
        key=lambda candidate: (
            candidate.pivot,
            candidate.coverage,
            tuple(sorted(candidate.edges)),
        ),
    )


def prefer_edges(edge_ids: Iterable[int]) -> Selector:
    """Picks the certificate lifting exactly ``edge_ids`` when it is among the candidates."""
    wanted = frozenset(edge_ids)

    def select(candidates: Sequence[PartitionCertificate]) -> PartitionCertificate:
        for candidate in candidates:
            if candidate.edges == wanted:
                return candidate
        return candidates[0]

    return select
