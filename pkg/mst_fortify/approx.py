"""
Discrete rounding of the continuous greedy: the targeted 2(1 - 1/n)-approximation
and the budgeted opt/2 - 1 solution.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .config import Limits
from .errors import ConsistencyError, FortifyError
from .graph import Perturbation, WeightedGraph, mst_weight
from .raise_mst import LiftStep, Trace, curve, invert_curve, raise_mst
from .strength import PartitionCertificate, Selector, finest_first

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class RoundingRecord:
    """How the last fractional lift of a greedy run was rounded."""

    prior_increase: Fraction
    floor_lift: int
    residual_budget: Fraction
    residual_increase: Fraction
    shores_lifted: int
    lifted_edges: frozenset[int]


@dataclass(frozen=True, kw_only=True)
class DiscreteSolution:
    perturbation: Perturbation
    achieved_increase: int
    cost: int
    continuous_bound: Fraction | None = None
    rounding: RoundingRecord | None = None


def discrete_solution(
    g: WeightedGraph,
    x: Perturbation,
    *,
    continuous_bound: Fraction | None = None,
    rounding: RoundingRecord | None = None,
) -> DiscreteSolution:
    if not x.integral:
        raise ConsistencyError("discrete solutions need an integral perturbation")
    increase = mst_weight(g, x) - mst_weight(g)
    cost = x.total_cost(g)
    return DiscreteSolution(
        perturbation=x,
        achieved_increase=int(increase),
        cost=int(cost),
        continuous_bound=continuous_bound,
        rounding=rounding,
    )


def ordered_shores(cert: PartitionCertificate) -> list[int]:
    """Shore positions by cut cost, then by smallest original vertex."""
    return sorted(
        range(len(cert.shores)),
        key=lambda position: (cert.shore_costs[position], min(cert.shore_vertices(position))),
    )


def _floored(trace: Trace) -> tuple[Perturbation, LiftStep | None, Fraction]:
    """Integral part of the trace, plus the last step and its dropped fraction."""
    x = Perturbation(integral=True)
    if not trace.steps:
        return x, None, Fraction(0)
    *earlier, last = trace.steps
    for step in earlier:
        if step.amount.denominator != 1:
            raise ConsistencyError(
                f"lift of {sorted(step.edges)} by {step.amount} is fractional before the last step"
            )
        x = x.lifted(step.edges, step.amount)
    floor_lift = math.floor(last.amount)
    if floor_lift:
        x = x.lifted(last.edges, floor_lift)
    return x, last, last.amount - floor_lift


def _shore_union(cert: PartitionCertificate, count: int) -> frozenset[int]:
    return frozenset().union(*(cert.shore_cut(position) for position in ordered_shores(cert)[:count]))


def targeted_approx(
    g: WeightedGraph,
    target_increase: int,
    *,
    select: Selector = finest_first,
    limits: Limits | None = None,
) -> DiscreteSolution:
    """Integral lift reaching ``target_increase`` at most 2(1 - 1/n) times the optimum cost."""
    if target_increase < 1:
        raise FortifyError(f"target increase must be a positive integer, got {target_increase}")
    bound = invert_curve(curve(g, select=select, limits=limits), target_increase)
    trace = raise_mst(g, bound, select=select, limits=limits)
    x, last, fraction = _floored(trace)
    rounding = None
    if last is not None and fraction:
        cert = last.certificate
        shores = cert.coverage * fraction
        if shores.denominator != 1:
            raise ConsistencyError(
                f"residual lift of {sorted(cert.edges)} covers {shores} shores, not an integer"
            )
        q = int(shores)
        lifted = _shore_union(cert, q)
        x = x.lifted(lifted, 1)
        rounding = RoundingRecord(
            prior_increase=last.mst_before - trace.steps[0].mst_before,
            floor_lift=math.floor(last.amount),
            residual_budget=fraction * cert.cost,
            residual_increase=shores,
            shores_lifted=q,
            lifted_edges=lifted,
        )
    solution = discrete_solution(g, x, continuous_bound=bound, rounding=rounding)
    if solution.achieved_increase < target_increase:
        raise ConsistencyError(
            f"rounded lift reaches {solution.achieved_increase}, below target {target_increase}"
        )
    logger.info(
        "targeted_approx: increase %s at cost %s (continuous budget %s)",
        solution.achieved_increase,
        solution.cost,
        bound,
    )
    return solution


def budgeted_approx(
    g: WeightedGraph,
    budget: int,
    *,
    select: Selector = finest_first,
    limits: Limits | None = None,
) -> DiscreteSolution:
    """Integral lift within ``budget`` whose increase is at least opt/2 - 1."""
    if budget < 0 or Fraction(budget).denominator != 1:
        raise FortifyError(f"budget must be a non-negative integer, got {budget}")
    trace = raise_mst(g, budget, select=select, limits=limits)
    x, last, fraction = _floored(trace)
    rounding = None
    if last is not None and fraction:
        cert = last.certificate
        residual = fraction * cert.cost
        q = 0
        lifted: frozenset[int] = frozenset()
        for count in range(1, len(cert.shores) + 1):
            union = _shore_union(cert, count)
            if g.cost_of(union) > residual:
                break
            q, lifted = count, union
        if lifted:
            x = x.lifted(lifted, 1)
        rounding = RoundingRecord(
            prior_increase=last.mst_before - trace.steps[0].mst_before,
            floor_lift=math.floor(last.amount),
            residual_budget=residual,
            residual_increase=fraction * cert.coverage,
            shores_lifted=q,
            lifted_edges=lifted,
        )
    solution = discrete_solution(g, x, continuous_bound=trace.increase, rounding=rounding)
    if solution.cost > budget:
        raise ConsistencyError(f"rounded lift costs {solution.cost}, over budget {budget}")
    logger.info(
        "budgeted_approx: increase %s at cost %s (continuous %s)",
        solution.achieved_increase,
        solution.cost,
        trace.increase,
    )
    return solution
