"""Builds result records from solver outputs."""

from collections.abc import Mapping
from fractions import Fraction

from ..approx import DiscreteSolution
from ..errors import FortifyError
from ..graph import Perturbation, WeightedGraph
from ..instance import format_rational, parse_instance
from ..raise_mst import BreakpointCurve, Trace
from ..records import CurveRow, PerturbationEntry, ResultRecord, SolveRequest, StepSummary, TraceSummary
from .base import CommandError

REQUEST_FIELDS = ("budget", "target", "eps", "clique_size", "source", "sink")


def parameters(request: SolveRequest) -> dict[str, str]:
    found = {}
    for name in REQUEST_FIELDS:
        value = getattr(request, name)
        if value is not None:
            found[name] = format_rational(value)
    return found


def graph_of(request: SolveRequest) -> WeightedGraph:
    if not request.instance.strip():
        raise CommandError("no instance given")
    return parse_instance(request.instance)


def integral_budget(request: SolveRequest) -> int:
    if request.budget.denominator != 1 or request.budget < 0:
        raise CommandError(f"this solver needs a non-negative integer budget, got {format_rational(request.budget)}")
    return int(request.budget)


def positive_target(request: SolveRequest) -> int:
    if request.target < 1:
        raise CommandError(f"target must be a positive integer, got {request.target}")
    return request.target


def entries(amounts: Mapping[int, Fraction | int]) -> list[PerturbationEntry]:
    return [PerturbationEntry(edge=edge, amount=amount) for edge, amount in sorted(amounts.items()) if amount]


def trace_summary(trace: Trace) -> TraceSummary:
    return TraceSummary(
        steps=[
            StepSummary(
                pivot=step.certificate.pivot,
                edges=sorted(step.edges),
                coverage=step.certificate.coverage,
                cost=step.certificate.cost,
                amount=step.amount,
                budget_after=step.budget_after,
            )
            for step in trace.steps
        ],
        breakpoints=trace.breakpoints(),
    )


def curve_rows(curve: BreakpointCurve) -> list[CurveRow]:
    return [CurveRow(budget=budget, mst_weight=weight, slope=slope) for budget, weight, slope in curve.rows()]


def solution_record(name: str, request: SolveRequest, solution: DiscreteSolution) -> ResultRecord:
    extra = {}
    if solution.continuous_bound is not None:
        extra["continuous_bound"] = format_rational(solution.continuous_bound)
    if solution.rounding is not None:
        rounding = solution.rounding
        extra["rounding"] = {
            "prior_increase": format_rational(rounding.prior_increase),
            "floor_lift": rounding.floor_lift,
            "residual_budget": format_rational(rounding.residual_budget),
            "residual_increase": format_rational(rounding.residual_increase),
            "shores_lifted": rounding.shores_lifted,
            "lifted_edges": sorted(rounding.lifted_edges),
        }
    return ResultRecord(
        solver=name,
        parameters=parameters(request),
        increase=solution.achieved_increase,
        cost=solution.cost,
        perturbation=entries(solution.perturbation.amounts),
        trace=TraceSummary(extra=extra) if extra else None,
    )


def perturbation_of(record: ResultRecord, *, integral: bool = False) -> Perturbation:
    try:
        return Perturbation(record.amounts, integral=integral)
    except FortifyError as error:
        raise CommandError(f"record perturbation is malformed: {error.message}") from error
