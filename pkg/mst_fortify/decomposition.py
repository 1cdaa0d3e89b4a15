"""
Decomposes an optimal continuous solution along a greedy trace and checks that
the decomposition is a sequence of proper lifts.

Between consecutive integral breakpoints b_i and b_(i+1) of the trace, the
reference weights w*_b first follow the greedy's lifted set while the offset
Delta_i stays fixed (until the spend reaches beta_i), then raise every
uncapped edge together until the offset reaches Delta_(i+1). The optimum w*
is taken as input; this module does not compute one.
"""

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from .errors import FortifyError, VerificationError
from .raise_mst import Trace, UnitLift

logger = logging.getLogger(__name__)


class Phase(StrEnum):
    FOLLOW = "follow"
    LEVEL = "level"


@dataclass(frozen=True, kw_only=True)
class LiftSegment:
    interval: int
    phase: Phase
    start: Fraction
    end: Fraction
    edges: frozenset[int]
    amount: Fraction


@dataclass(frozen=True, kw_only=True)
class DecompositionTrace:
    breakpoints: tuple[Fraction, ...]
    deltas: tuple[Fraction, ...]
    betas: tuple[Fraction, ...]
    refined: tuple[Fraction, ...]
    segments: tuple[LiftSegment, ...]
    capped: tuple[tuple[Fraction, frozenset[int]], ...]


def _invert(
    fn: Callable[[Fraction], Fraction],
    lo: Fraction,
    hi: Fraction,
    kinks: Iterable[Fraction],
    target: Fraction,
) -> Fraction | None:
    """Smallest argument in [lo, hi] where a non-decreasing piecewise-linear ``fn`` hits ``target``."""
    points = sorted({lo, hi, *(kink for kink in kinks if lo < kink < hi)})
    previous, value = points[0], fn(points[0])
    if value == target:
        return previous
    for point in points[1:]:
        reached = fn(point)
        if value < target <= reached:
            return previous + (target - value) * (point - previous) / (reached - value)
        previous, value = point, reached
    return None


class _Reference:
    """The reference weights w*_b for one (trace, w*) pair."""

    def __init__(self, trace: Trace, w_star: Sequence[Fraction]):
        self.trace = trace
        self.graph = trace.graph
        self.w_star = list(w_star)
        self.base = [Fraction(edge.weight) for edge in self.graph.edges]
        self.lifts: list[UnitLift] = trace.unit_lifts()
        self.breakpoints = [Fraction(0)] + [lift.end for lift in self.lifts]
        self.deltas = [self.solve_delta(self.trace.weights_at(b), b) for b in self.breakpoints]
        self.betas = [
            self.cost(self.deltas[i], self.trace.weights_at(self.breakpoints[i + 1]))
            for i in range(len(self.lifts))
        ]

    def clipped(self, delta: Fraction, weights: Sequence[Fraction]) -> list[Fraction]:
        return [min(star, weight + delta) for star, weight in zip(self.w_star, weights, strict=True)]

    def cost(self, delta: Fraction, weights: Sequence[Fraction]) -> Fraction:
        return sum(
            (
                edge.cost * (value - self.base[edge.index])
                for edge, value in zip(self.graph.edges, self.clipped(delta, weights), strict=True)
            ),
            Fraction(0),
        )

    def solve_delta(self, weights: Sequence[Fraction], budget: Fraction) -> Fraction:
        gaps = [star - weight for star, weight in zip(self.w_star, weights, strict=True)]
        top = max([Fraction(0), *gaps])
        delta = _invert(lambda d: self.cost(d, weights), Fraction(0), top, gaps, budget)
        if delta is None:
            raise VerificationError(
                f"no offset spends exactly {budget} from the greedy weights", invariant="offset"
            )
        return delta

    def interval_of(self, budget: Fraction) -> int:
        for i in range(len(self.lifts)):
            if budget <= self.breakpoints[i + 1]:
                return i
        raise FortifyError(f"budget {budget} is past the traced budget")

    def at(self, budget: Fraction) -> list[Fraction]:
        """w*_b computed from its definition."""
        budget = Fraction(budget)
        if not self.lifts:
            return self.clipped(self.deltas[0], self.base)
        i = self.interval_of(budget)
        lift = self.lifts[i]
        delta = self.deltas[i]
        if budget <= self.betas[i]:
            start = self.trace.weights_at(lift.start)
            cost = self.graph.cost_of(lift.edges)
            kinks = [
                lift.start + (self.w_star[index] - delta - start[index]) * cost
                for index in lift.edges
            ]
            spot = _invert(
                lambda f: self.cost(delta, self.trace.weights_at(f)),
                lift.start,
                lift.end,
                kinks,
                budget,
            )
            if spot is None:
                raise VerificationError(
                    f"budget {budget} is not reached while following {sorted(lift.edges)}",
                    invariant="follow-phase",
                )
            return self.clipped(delta, self.trace.weights_at(spot))
        end = self.trace.weights_at(lift.end)
        kinks = [star - weight for star, weight in zip(self.w_star, end, strict=True)]
        level = _invert(
            lambda d: self.cost(d, end), delta, self.deltas[i + 1], kinks, budget
        )
        if level is None:
            raise VerificationError(
                f"budget {budget} is not reached while levelling interval {i}",
                invariant="level-phase",
            )
        return self.clipped(level, end)


def _check_final(trace: Trace, w_star: Sequence[Fraction | int]) -> list[Fraction]:
    g = trace.graph
    w_star = [Fraction(value) for value in w_star]
    if len(w_star) != g.edge_count:
        raise FortifyError(f"expected {g.edge_count} final weights, got {len(w_star)}")
    below = [edge.index for edge in g.edges if w_star[edge.index] < edge.weight]
    if below:
        raise FortifyError(f"final weights of edges {below} are below their base weights")
    spent = sum(
        (edge.cost * (w_star[edge.index] - edge.weight) for edge in g.edges), Fraction(0)
    )
    if spent != trace.spent:
        raise FortifyError(f"final weights spend {spent}, but the trace spends {trace.spent}")
    return w_star


def _segments(
    start: Fraction,
    thresholds: dict[int, Fraction],
    length: Fraction,
    costs: Sequence[int],
    *,
    interval: int,
    phase: Phase,
) -> list[LiftSegment]:
    """Splits a lift of ``length`` where members run into their thresholds."""
    events = sorted({t for t in thresholds.values() if 0 < t < length})
    cuts = [Fraction(0), *events, length]
    cursor = start
    segments = []
    for a, b in zip(cuts, cuts[1:], strict=False):
        if b <= a:
            continue
        active = frozenset(index for index, t in thresholds.items() if t > a)
        if not active:
            continue
        spend = (b - a) * sum(costs[index] for index in active)
        segments.append(
            LiftSegment(
                interval=interval,
                phase=phase,
                start=cursor,
                end=cursor + spend,
                edges=active,
                amount=b - a,
            )
        )
        cursor += spend
    return segments


def decompose_and_verify(trace: Trace, w_star: Sequence[Fraction | int]) -> DecompositionTrace:
    """Builds the lift segments that turn the greedy trace into ``w_star`` and verifies them."""
    w_star = _check_final(trace, w_star)
    reference = _Reference(trace, w_star)
    g = trace.graph
    costs = [edge.cost for edge in g.edges]
    deltas, betas, b = reference.deltas, reference.betas, reference.breakpoints
    for i in range(len(deltas) - 1):
        if deltas[i + 1] < deltas[i]:
            raise VerificationError(
                f"offset drops from {deltas[i]} to {deltas[i + 1]} at breakpoint {b[i + 1]}",
                invariant="monotone-offset",
            )

    segments: list[LiftSegment] = []
    for i, lift in enumerate(reference.lifts):
        start = trace.weights_at(lift.start)
        follow = {index: w_star[index] - start[index] - deltas[i] for index in lift.edges}
        segments += _segments(b[i], follow, lift.amount, costs, interval=i, phase=Phase.FOLLOW)
        end = trace.weights_at(lift.end)
        level = {index: w_star[index] - end[index] - deltas[i] for index in range(g.edge_count)}
        segments += _segments(
            betas[i], level, deltas[i + 1] - deltas[i], costs, interval=i, phase=Phase.LEVEL
        )

    cursor = Fraction(0)
    capped = []
    for segment in segments:
        if segment.start != cursor:
            raise VerificationError(
                f"segment starts at {segment.start}, expected {cursor}", invariant="segment-chain"
            )
        cursor = segment.end
        before = reference.at(segment.start)
        middle = reference.at((segment.start + segment.end) / 2)
        after = reference.at(segment.end)
        for lower, upper in ((before, middle), (middle, after)):
            rises = {
                index: upper[index] - lower[index]
                for index in range(g.edge_count)
                if upper[index] != lower[index]
            }
            if frozenset(rises) != segment.edges or set(rises.values()) != {segment.amount / 2}:
                raise VerificationError(
                    f"segment [{segment.start}, {segment.end}] moves {rises}, "
                    f"not {sorted(segment.edges)} by {segment.amount / 2} per half",
                    invariant="proper-lift",
                )
        at_cap = frozenset(index for index in range(g.edge_count) if before[index] == w_star[index])
        capped.append((segment.start, at_cap))
        expected = (
            reference.lifts[segment.interval].edges
            if segment.phase == Phase.FOLLOW
            else frozenset(range(g.edge_count))
        ) - at_cap
        if segment.edges != expected:
            raise VerificationError(
                f"segment at {segment.start} lifts {sorted(segment.edges)}, "
                f"expected {sorted(expected)}",
                invariant="lifted-set",
            )
    if cursor != trace.spent:
        raise VerificationError(
            f"segments end at {cursor}, the trace at {trace.spent}", invariant="segment-chain"
        )
    if reference.at(trace.spent) != w_star:
        raise VerificationError("reference weights miss the optimum", invariant="endpoint")

    refined = sorted({point for segment in segments for point in (segment.start, segment.end)})
    logger.info("decomposed %s breakpoints into %s segments", len(b), len(segments))
    return DecompositionTrace(
        breakpoints=tuple(b),
        deltas=tuple(deltas),
        betas=tuple(betas),
        refined=tuple(refined),
        segments=tuple(segments),
        capped=tuple(capped),
    )


def verify_legacy_lift(
    trace: Trace, w_star: Sequence[Fraction | int], budget: Fraction | int, step: Fraction | int
) -> tuple[frozenset[int], Fraction]:
    """Checks one step of the uncorrected rule w*_b = min(w*, w_b + Delta_b).

    Returns the lifted edges and amount, or raises when the step is not a proper lift.
    """
    w_star = _check_final(trace, w_star)
    reference = _Reference(trace, w_star)
    budget, step = Fraction(budget), Fraction(step)

    def legacy(b: Fraction) -> list[Fraction]:
        weights = trace.weights_at(b)
        return reference.clipped(reference.solve_delta(weights, b), weights)

    before, after = legacy(budget), legacy(budget + step)
    rises = {
        index: after[index] - before[index]
        for index in range(trace.graph.edge_count)
        if after[index] != before[index]
    }
    if len(set(rises.values())) > 1:
        raise VerificationError(
            f"edges {sorted(rises)} rise by {[rises[i] for i in sorted(rises)]}; not a lift",
            invariant="proper-lift",
        )
    return frozenset(rises), next(iter(rises.values()), Fraction(0))
