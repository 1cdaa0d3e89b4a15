"""
The continuous greedy over minimum inc_cost sets and the budget -> MST weight curve.
"""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from .config import Limits
from .errors import ConsistencyError, FortifyError, UnreachableTargetError
from .graph import Perturbation, WeightedGraph, mst_weight
from .strength import (
    PartitionCertificate,
    Selector,
    StrengthFn,
    finest_first,
    min_inc_cost_candidates,
    tolerance,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class LiftStep:
    certificate: PartitionCertificate
    amount: Fraction
    tolerance: Fraction | float
    budget_before: Fraction
    budget_after: Fraction
    mst_before: Fraction
    mst_after: Fraction

    @property
    def edges(self) -> frozenset[int]:
        return self.certificate.edges


@dataclass(frozen=True, kw_only=True)
class UnitLift:
    """One interval between consecutive integral-weight breakpoints b_i and b_(i+1)."""

    start: Fraction
    end: Fraction
    edges: frozenset[int]
    amount: Fraction


@dataclass(frozen=True, kw_only=True)
class Trace:
    graph: WeightedGraph
    budget: Fraction
    steps: tuple[LiftStep, ...]
    perturbation: Perturbation

    @property
    def increase(self) -> Fraction:
        return sum(
            (step.amount * step.certificate.coverage for step in self.steps), Fraction(0)
        )

    @property
    def spent(self) -> Fraction:
        return self.steps[-1].budget_after if self.steps else Fraction(0)

    @property
    def final_weights(self) -> list[Fraction]:
        return self.perturbation.weights(self.graph)

    def unit_lifts(self) -> list[UnitLift]:
        """Splits every step where its lifted edges cross an integral weight."""
        lifts = []
        for step in self.steps:
            cost = step.certificate.cost
            cursor = step.budget_before
            left = step.amount
            while left > 0:
                piece = min(left, Fraction(1))
                lifts.append(
                    UnitLift(
                        start=cursor,
                        end=cursor + piece * cost,
                        edges=step.edges,
                        amount=piece,
                    )
                )
                cursor += piece * cost
                left -= piece
        return lifts

    def breakpoints(self) -> list[Fraction]:
        return [Fraction(0)] + [lift.end for lift in self.unit_lifts()]

    def weights_at(self, budget: Fraction | int) -> list[Fraction]:
        """Weights reached by the greedy after spending ``budget``."""
        budget = Fraction(budget)
        if not 0 <= budget <= self.spent:
            raise FortifyError(f"budget {budget} is outside the traced range [0, {self.spent}]")
        weights = [Fraction(edge.weight) for edge in self.graph.edges]
        for step in self.steps:
            if budget <= step.budget_before:
                break
            portion = min(budget, step.budget_after) - step.budget_before
            delta = portion / step.certificate.cost
            for index in step.edges:
                weights[index] += delta
        return weights


def _headroom(cert: PartitionCertificate, g: WeightedGraph, x: Perturbation) -> Fraction | float:
    return min(g.edges[index].cap - x.amount(index) for index in cert.edges)


def raise_mst(
    g: WeightedGraph,
    budget: Fraction | int,
    *,
    select: Selector = finest_first,
    strength_fn: StrengthFn | None = None,
    limits: Limits | None = None,
) -> Trace:
    """Spends ``budget`` on lifts of minimum inc_cost sets until it runs out or every edge saturates."""
    budget = Fraction(budget)
    if budget < 0:
        raise FortifyError(f"budget must be non-negative, got {budget}")
    x = Perturbation()
    balance = budget
    mst = mst_weight(g, x)
    steps = []
    while balance > 0:
        candidates = min_inc_cost_candidates(g, x, strength_fn=strength_fn, limits=limits)
        if not candidates:
            logger.debug("every edge is saturated with %s left", balance)
            break
        cert = select(candidates)
        limit = tolerance(cert, g, x)
        amount = Fraction(min(limit, _headroom(cert, g, x), balance / cert.cost))
        x = x.lifted(cert.edges, amount)
        spent = amount * cert.cost
        step = LiftStep(
            certificate=cert,
            amount=amount,
            tolerance=limit,
            budget_before=budget - balance,
            budget_after=budget - balance + spent,
            mst_before=mst,
            mst_after=mst + amount * cert.coverage,
        )
        recomputed = mst_weight(g, x)
        if recomputed != step.mst_after:
            raise ConsistencyError(
                f"lifting {sorted(cert.edges)} by {amount} gave MST weight {recomputed}, "
                f"expected {step.mst_after}"
            )
        logger.debug(
            "lift %s by %s at pivot %s (inc_cost %s)",
            sorted(cert.edges),
            amount,
            cert.pivot,
            cert.inc_cost,
        )
        steps.append(step)
        balance -= spent
        mst = step.mst_after
    trace = Trace(graph=g, budget=budget, steps=tuple(steps), perturbation=x)
    logger.info("raise_mst spent %s of %s for increase %s", trace.spent, budget, trace.increase)
    return trace


class CurveEnd(StrEnum):
    UNBOUNDED = "unbounded"
    CAPPED = "capped"
    LIMIT = "limit"


@dataclass(frozen=True, kw_only=True)
class CurvePoint:
    budget: Fraction
    mst_weight: Fraction
    slope: Fraction


@dataclass(frozen=True, kw_only=True)
class BreakpointCurve:
    """f_G as breakpoints; each slope holds until the next breakpoint."""

    points: tuple[CurvePoint, ...]
    end: CurveEnd
    end_budget: Fraction | None = None

    @property
    def base_weight(self) -> Fraction:
        return self.points[0].mst_weight

    def value(self, budget: Fraction | int) -> Fraction:
        budget = Fraction(budget)
        if budget < 0:
            raise FortifyError(f"budget must be non-negative, got {budget}")
        if self.end == CurveEnd.LIMIT and budget > self.end_budget:
            raise FortifyError(f"curve was only traced up to budget {self.end_budget}")
        point = self.points[0]
        for candidate in self.points:
            if candidate.budget > budget:
                break
            point = candidate
        return point.mst_weight + point.slope * (budget - point.budget)

    def increase(self, budget: Fraction | int) -> Fraction:
        return self.value(budget) - self.base_weight

    def is_concave(self) -> bool:
        return all(a.slope >= b.slope for a, b in zip(self.points, self.points[1:], strict=False))

    def rows(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        return [(point.budget, point.mst_weight, point.slope) for point in self.points]


def curve(
    g: WeightedGraph,
    budget_limit: Fraction | int | None = None,
    *,
    select: Selector = finest_first,
    strength_fn: StrengthFn | None = None,
    limits: Limits | None = None,
) -> BreakpointCurve:
    """Traces the greedy without a budget bound, one point per change of slope."""
    limit = None if budget_limit is None else Fraction(budget_limit)
    if limit is not None and limit < 0:
        raise FortifyError(f"budget limit must be non-negative, got {limit}")
    x = Perturbation()
    budget = Fraction(0)
    mst = mst_weight(g, x)
    points: list[CurvePoint] = []

    def emit(slope: Fraction):
        if not points or points[-1].slope != slope:
            points.append(CurvePoint(budget=budget, mst_weight=mst, slope=slope))

    while True:
        if limit is not None and budget >= limit:
            if not points:
                emit(Fraction(0))
            return BreakpointCurve(points=tuple(points), end=CurveEnd.LIMIT, end_budget=limit)
        candidates = min_inc_cost_candidates(g, x, strength_fn=strength_fn, limits=limits)
        if not candidates:
            emit(Fraction(0))
            return BreakpointCurve(points=tuple(points), end=CurveEnd.CAPPED, end_budget=budget)
        cert = select(candidates)
        emit(Fraction(cert.coverage, cert.cost))
        amount = min(tolerance(cert, g, x), _headroom(cert, g, x))
        if limit is not None:
            amount = min(amount, (limit - budget) / cert.cost)
        if amount == math.inf:
            return BreakpointCurve(points=tuple(points), end=CurveEnd.UNBOUNDED)
        amount = Fraction(amount)
        x = x.lifted(cert.edges, amount)
        budget += amount * cert.cost
        mst += amount * cert.coverage


def invert_curve(curve: BreakpointCurve, target_increase: Fraction | int) -> Fraction:
    """Minimal budget whose curve value reaches ``target_increase`` over the base weight."""
    target = Fraction(target_increase)
    if target < 0:
        raise FortifyError(f"target increase must be non-negative, got {target}")
    if target == 0:
        return Fraction(0)
    base = curve.base_weight
    points = curve.points
    for position, point in enumerate(points):
        reached = point.mst_weight - base
        if position + 1 < len(points):
            gain = points[position + 1].mst_weight - point.mst_weight
            if point.slope > 0 and reached + gain >= target:
                return point.budget + (target - reached) / point.slope
            continue
        if curve.end == CurveEnd.UNBOUNDED:
            return point.budget + (target - reached) / point.slope
        ceiling = reached
        if curve.end == CurveEnd.LIMIT:
            ceiling = reached + point.slope * (curve.end_budget - point.budget)
            if point.slope > 0 and ceiling >= target:
                return point.budget + (target - reached) / point.slope
        raise UnreachableTargetError(
            f"target increase {target} is unreachable; the maximum is {ceiling}",
            max_increase=ceiling,
        )
    raise ConsistencyError("curve has no points")
