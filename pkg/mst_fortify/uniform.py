"""
Solvers for graphs whose edges all start at the same weight: min i-cuts, the two
knapsack forms, supermodular uncrossing and the chain lift built from them.
"""

import logging
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .approx import DiscreteSolution, budgeted_approx, discrete_solution
from .config import Limits, current_limits
from .errors import (
    ConsistencyError,
    FortifyError,
    SizeGuardError,
    UniformWeightError,
    UnreachableTargetError,
)
from .graph import Perturbation, WeightedGraph, coverage
from .partitions import set_partitions
from .raise_mst import curve, invert_curve, raise_mst

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class KnapsackItem:
    weight: int
    profit: int


@dataclass(frozen=True)
class CutFamily:
    """Edge sets with multiplicities; ``chain`` marks a family ordered by inclusion."""

    members: tuple[tuple[frozenset[int], int], ...]
    chain: bool = False

    def total_cost(self, g: WeightedGraph) -> int:
        return sum(copies * g.cost_of(edges) for edges, copies in self.members)

    def total_coverage(self, g: WeightedGraph) -> int:
        return sum(copies * coverage(edges, g) for edges, copies in self.members)

    def potential(self) -> int:
        return sum(copies * len(edges) ** 2 for edges, copies in self.members)

    def is_chain(self) -> bool:
        sets = [edges for edges, _ in self.members]
        return all(a <= b or b <= a for a in sets for b in sets)


def require_uniform(g: WeightedGraph, bound: int) -> None:
    if not g.is_uniform():
        raise UniformWeightError(
            "edges start at different weights; use budgeted_approx or targeted_approx instead"
        )
    capped = [edge.index for edge in g.edges if edge.cap < bound]
    if capped:
        raise UniformWeightError(
            f"edges {capped} have caps below {bound}; capped uniform instances are not supported"
        )


def _partition_cut(g: WeightedGraph, blocks: Sequence[Sequence[int]]) -> frozenset[int]:
    block_of = {vertex: position for position, block in enumerate(blocks) for vertex in block}
    return frozenset(edge.index for edge in g.edges if block_of[edge.u] != block_of[edge.v])


def min_i_cut(g: WeightedGraph, i: int, *, limits: Limits | None = None) -> frozenset[int]:
    """Cheapest edge set whose removal leaves at least ``i`` components."""
    if not 2 <= i <= g.vertex_count:
        raise FortifyError(f"i must lie in [2, {g.vertex_count}], got {i}")
    if i == 2:
        simple = nx.Graph()
        simple.add_nodes_from(range(g.vertex_count))
        for edge in g.edges:
            if simple.has_edge(edge.u, edge.v):
                simple[edge.u][edge.v]["weight"] += edge.cost
            else:
                simple.add_edge(edge.u, edge.v, weight=edge.cost)
        _, (shore, rest) = nx.stoer_wagner(simple)
        return _partition_cut(g, [shore, rest])
    limits = current_limits(limits)
    if g.vertex_count > limits.max_cut_vertices:
        raise SizeGuardError(
            f"min {i}-cut enumeration over {g.vertex_count} vertices exceeds the guard of "
            f"{limits.max_cut_vertices}"
        )
    best: tuple | None = None
    for blocks in set_partitions(range(g.vertex_count), blocks=i):
        cut = _partition_cut(g, blocks)
        key = (g.cost_of(cut), tuple(sorted(cut)))
        if best is None or key < best[0]:
            best = (key, cut)
    return best[1]


def unbounded_knapsack(items: Sequence[KnapsackItem], capacity: int) -> tuple[int, ...]:
    """Multiplicities of maximum profit within ``capacity``.

    Peels copies of the best profit/weight item and combines them with a
    least-weight table over exact profits up to the sum of p_best * p_i.
    """
    counts = [0] * len(items)
    if capacity <= 0 or not items:
        return tuple(counts)
    if any(item.weight < 1 or item.profit < 1 for item in items):
        raise FortifyError("knapsack items need positive weights and profits")
    best = max(
        range(len(items)),
        key=lambda j: (Fraction(items[j].profit, items[j].weight), -j),
    )
    lead = items[best]
    ceiling = sum(lead.profit * item.profit for j, item in enumerate(items) if j != best)
    least: list[int | None] = [0] + [None] * ceiling
    choice: list[int | None] = [None] * (ceiling + 1)
    for profit in range(1, ceiling + 1):
        for j, item in enumerate(items):
            if item.profit > profit or least[profit - item.profit] is None:
                continue
            weight = least[profit - item.profit] + item.weight
            if least[profit] is None or weight < least[profit]:
                least[profit] = weight
                choice[profit] = j
    answer = None
    for profit, weight in enumerate(least):
        if weight is None or weight > capacity:
            continue
        copies = (capacity - weight) // lead.weight
        total = profit + copies * lead.profit
        if answer is None or total > answer[0]:
            answer = (total, profit, copies)
    _, profit, copies = answer
    while profit:
        j = choice[profit]
        counts[j] += 1
        profit -= items[j].profit
    counts[best] += copies
    return tuple(counts)


def profit_dp(items: Sequence[KnapsackItem], target: int) -> tuple[int, ...]:
    """Multiplicities of minimum total weight whose profit reaches ``target``."""
    if not any(item.profit >= 1 for item in items):
        raise FortifyError("profit_dp needs an item with positive profit")
    least: list[int] = [0] + [0] * max(target, 0)
    choice: list[int | None] = [None] * (max(target, 0) + 1)
    for need in range(1, target + 1):
        best = None
        for j, item in enumerate(items):
            if item.profit < 1:
                continue
            weight = least[max(0, need - item.profit)] + item.weight
            if best is None or weight < best:
                best, choice[need] = weight, j
        least[need] = best
    counts = [0] * len(items)
    need = target
    while need > 0:
        j = choice[need]
        counts[j] += 1
        need = max(0, need - items[j].profit)
    return tuple(counts)


def uncross(family: CutFamily, g: WeightedGraph) -> CutFamily:
    """Replaces incomparable pairs by their union and intersection until the family is a chain."""
    if not g.is_uniform():
        raise UniformWeightError("uncrossing needs uniform starting weights")
    copies: Counter[frozenset[int]] = Counter()
    for edges, count in family.members:
        edges = g.check_edge_ids(edges)
        if edges and count > 0:
            copies[edges] += count
    while True:
        pair = _incomparable_pair(copies)
        if pair is None:
            break
        a, b = pair
        for edges in (a, b):
            copies[edges] -= 1
            if not copies[edges]:
                del copies[edges]
        copies[a | b] += 1
        if a & b:
            copies[a & b] += 1
        logger.debug("uncrossed %s and %s", sorted(a), sorted(b))
    members = sorted(copies.items(), key=lambda item: (-len(item[0]), sorted(item[0])))
    return CutFamily(members=tuple(members), chain=True)


def _incomparable_pair(
    copies: Counter[frozenset[int]],
) -> tuple[frozenset[int], frozenset[int]] | None:
    sets = sorted(copies, key=lambda edges: (len(edges), sorted(edges)))
    for position, a in enumerate(sets):
        for b in sets[position + 1 :]:
            if not (a <= b or b <= a):
                return a, b
    return None


def _lift_family(family: CutFamily) -> Perturbation:
    x = Perturbation(integral=True)
    for edges, copies in family.members:
        x = x.lifted(edges, copies)
    return x


def _cut_items(
    g: WeightedGraph, top: int, limits: Limits | None
) -> tuple[list[KnapsackItem], list[frozenset[int]]]:
    cuts = [min_i_cut(g, increase + 1, limits=limits) for increase in range(1, top + 1)]
    items = [
        KnapsackItem(weight=g.cost_of(cut), profit=increase)
        for increase, cut in enumerate(cuts, start=1)
    ]
    return items, cuts


def _chain_solution(
    g: WeightedGraph,
    cuts: Sequence[frozenset[int]],
    counts: Iterable[int],
    continuous_bound: Fraction | None,
) -> DiscreteSolution:
    family = CutFamily(
        members=tuple((cut, count) for cut, count in zip(cuts, counts, strict=True) if count)
    )
    chain = uncross(family, g)
    solution = discrete_solution(g, _lift_family(chain), continuous_bound=continuous_bound)
    expected = chain.total_coverage(g)
    if solution.achieved_increase != expected:
        raise ConsistencyError(
            f"chain lift reached {solution.achieved_increase}, expected {expected}"
        )
    return solution


def uniform_targeted_exact(
    g: WeightedGraph, target: int, *, limits: Limits | None = None
) -> DiscreteSolution:
    """Cheapest integral lift reaching ``target`` on a uniform-weight graph."""
    if target < 1:
        raise FortifyError(f"target must be a positive integer, got {target}")
    require_uniform(g, target)
    top = min(target, g.vertex_count - 1)
    if top < 1:
        raise UnreachableTargetError("a single vertex has no spanning edges to lift", max_increase=0)
    items, cuts = _cut_items(g, top, limits)
    counts = profit_dp(items, target)
    bound = invert_curve(curve(g, limits=limits), target)
    solution = _chain_solution(g, cuts, counts, bound)
    logger.info("uniform_targeted_exact: cost %s for target %s", solution.cost, target)
    return solution


def uniform_budgeted_exact(
    g: WeightedGraph,
    budget: int,
    *,
    max_profit: int | None = None,
    limits: Limits | None = None,
) -> DiscreteSolution:
    """Largest integral increase within ``budget`` on a uniform-weight graph."""
    if budget < 0:
        raise FortifyError(f"budget must be non-negative, got {budget}")
    require_uniform(g, budget)
    top = g.vertex_count - 1
    if max_profit is not None:
        top = min(top, max_profit)
    if budget == 0 or top < 1:
        return discrete_solution(g, Perturbation(integral=True), continuous_bound=Fraction(0))
    items, cuts = _cut_items(g, top, limits)
    counts = unbounded_knapsack(items, budget)
    continuous = raise_mst(g, budget, limits=limits).increase
    solution = _chain_solution(g, cuts, counts, continuous)
    logger.info("uniform_budgeted_exact: increase %s within %s", solution.achieved_increase, budget)
    return solution


def uniform_halfeps_approx(
    g: WeightedGraph, budget: int, eps: Fraction | int, *, limits: Limits | None = None
) -> DiscreteSolution:
    """Increase of at least (1/2 - eps) times the optimum, falling back to the exact solver on small optima."""
    eps = Fraction(eps)
    if eps <= 0:
        raise FortifyError(f"eps must be positive, got {eps}")
    require_uniform(g, budget)
    greedy = budgeted_approx(g, budget, limits=limits)
    if greedy.achieved_increase >= 1 / eps:
        return greedy
    bound = math.ceil(2 + 2 / eps)
    exact = uniform_budgeted_exact(g, budget, max_profit=bound, limits=limits)
    logger.debug(
        "halfeps: greedy %s, bounded exact %s", greedy.achieved_increase, exact.achieved_increase
    )
    return exact if exact.achieved_increase > greedy.achieved_increase else greedy


def mincut_lift_heuristic(
    g: WeightedGraph, budget: int, *, limits: Limits | None = None
) -> DiscreteSolution:
    """Lifts every edge of one global minimum cut as often as the budget allows."""
    if budget < 0:
        raise FortifyError(f"budget must be non-negative, got {budget}")
    require_uniform(g, budget)
    if g.vertex_count < 2:
        return discrete_solution(g, Perturbation(integral=True))
    cut = min_i_cut(g, 2, limits=limits)
    times = budget // g.cost_of(cut)
    x = Perturbation(integral=True)
    if times:
        x = x.lifted(cut, times)
    return discrete_solution(g, x)
