from fractions import Fraction

from ..approx import budgeted_approx, targeted_approx
from ..graph import mst_weight
from ..oracle import brute_budgeted, brute_targeted, greedy_oracle_increase
from ..raise_mst import CurveEnd, curve, raise_mst
from ..records import ResultRecord, SolveRequest
from .base import BaseSolverCommand
from .render import (
    curve_rows,
    entries,
    graph_of,
    integral_budget,
    parameters,
    perturbation_of,
    positive_target,
    solution_record,
    trace_summary,
)


class CurveCommand(BaseSolverCommand):
    name = "curve"
    description = "Breakpoints of the optimal continuous MST weight as a function of the budget."
    oracle = "greedy with exhaustive strength"

    def solve(self, request: SolveRequest) -> ResultRecord:
        traced = curve(graph_of(request), request.budget)
        return ResultRecord(
            solver=self.name,
            parameters={**parameters(request), "end": traced.end.value},
            curve=curve_rows(traced),
        )

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        g = graph_of(request)
        base = record.curve[0].mst_weight
        budgets = [row.budget for row in record.curve]
        if record.parameters["end"] != CurveEnd.LIMIT:
            budgets.append(budgets[-1] + 1)
        for budget in budgets:
            value = _curve_value(record, budget) - base
            expected = greedy_oracle_increase(g, budget)
            if value != expected:
                return False, f"curve gives {value} at budget {budget}, oracle {expected}"
        return True, f"matched the oracle at {len(budgets)} budgets"


def _curve_value(record: ResultRecord, budget: Fraction) -> Fraction:
    row = record.curve[0]
    for candidate in record.curve:
        if candidate.budget <= budget:
            row = candidate
    return row.mst_weight + row.slope * (budget - row.budget)


class RaiseCommand(BaseSolverCommand):
    name = "raise"
    description = "Continuous greedy lift of minimum inc_cost sets within a budget."
    parameters = ("budget",)
    oracle = "greedy with exhaustive strength"

    def solve(self, request: SolveRequest) -> ResultRecord:
        trace = raise_mst(graph_of(request), request.budget)
        return ResultRecord(
            solver=self.name,
            parameters=parameters(request),
            increase=trace.increase,
            cost=trace.spent,
            perturbation=entries(trace.perturbation.amounts),
            trace=trace_summary(trace),
        )

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        g = graph_of(request)
        expected = greedy_oracle_increase(g, request.budget)
        replayed = mst_weight(g, perturbation_of(record)) - mst_weight(g)
        if record.increase != expected or replayed != expected:
            return False, f"reported {record.increase}, replayed {replayed}, oracle {expected}"
        return True, f"continuous optimum {expected}"


class BudgetedCommand(BaseSolverCommand):
    name = "budgeted"
    description = "Integral lift within a budget reaching at least opt/2 - 1."
    parameters = ("budget",)
    oracle = "brute_budgeted"

    def solve(self, request: SolveRequest) -> ResultRecord:
        return solution_record(self.name, request, budgeted_approx(graph_of(request), integral_budget(request)))

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        budget = integral_budget(request)
        best = brute_budgeted(graph_of(request), budget).achieved_increase
        if record.increase < Fraction(best, 2) - 1 or record.cost > budget:
            return False, f"increase {record.increase} at cost {record.cost}; optimum {best}"
        return True, f"increase {record.increase}, optimum {best}"


class TargetedCommand(BaseSolverCommand):
    name = "targeted"
    description = "Integral lift reaching a target increase within 2(1 - 1/n) of the cheapest."
    parameters = ("target",)
    oracle = "brute_targeted"

    def solve(self, request: SolveRequest) -> ResultRecord:
        return solution_record(self.name, request, targeted_approx(graph_of(request), positive_target(request)))

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        g = graph_of(request)
        target = positive_target(request)
        best = brute_targeted(g, target).cost
        ratio = 2 * (1 - Fraction(1, g.vertex_count))
        if record.cost > ratio * best or record.increase < target:
            return False, f"cost {record.cost} for increase {record.increase}; optimum cost {best}"
        return True, f"cost {record.cost}, optimum {best}"
