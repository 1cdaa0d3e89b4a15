from fractions import Fraction

from ..oracle import brute_budgeted, brute_targeted
from ..records import ResultRecord, SolveRequest
from ..uniform import (
    mincut_lift_heuristic,
    uniform_budgeted_exact,
    uniform_halfeps_approx,
    uniform_targeted_exact,
)
from .base import BaseSolverCommand, CommandError
from .render import graph_of, integral_budget, positive_target, solution_record


class UniformExactCommand(BaseSolverCommand):
    name = "uniform-exact"
    description = "Cheapest integral lift reaching a target on a graph with uniform starting weights."
    parameters = ("target",)
    oracle = "brute_targeted"

    def solve(self, request: SolveRequest) -> ResultRecord:
        solution = uniform_targeted_exact(graph_of(request), positive_target(request))
        return solution_record(self.name, request, solution)

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        best = brute_targeted(graph_of(request), positive_target(request)).cost
        return record.cost == best, f"cost {record.cost}, optimum {best}"


class UniformBudgetedCommand(BaseSolverCommand):
    name = "uniform-budgeted"
    description = (
        "Largest integral increase within a budget on a graph with uniform starting weights; "
        "with --eps, the (1/2 - eps)-approximation."
    )
    parameters = ("budget",)
    oracle = "brute_budgeted"

    def solve(self, request: SolveRequest) -> ResultRecord:
        g = graph_of(request)
        budget = integral_budget(request)
        if request.eps is None:
            solution = uniform_budgeted_exact(g, budget)
        else:
            if request.eps <= 0:
                raise CommandError("--eps must be positive")
            solution = uniform_halfeps_approx(g, budget, request.eps)
        return solution_record(self.name, request, solution)

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        best = brute_budgeted(graph_of(request), integral_budget(request)).achieved_increase
        if request.eps is None:
            return record.increase == best, f"increase {record.increase}, optimum {best}"
        floor = (Fraction(1, 2) - request.eps) * best
        return record.increase >= floor, f"increase {record.increase}, optimum {best}"


class HeuristicMincutCommand(BaseSolverCommand):
    name = "heuristic-mincut"
    description = "Lifts one global minimum cut as often as the budget allows."
    parameters = ("budget",)
    oracle = "brute_budgeted"

    def solve(self, request: SolveRequest) -> ResultRecord:
        solution = mincut_lift_heuristic(graph_of(request), integral_budget(request))
        return solution_record(self.name, request, solution)

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        budget = integral_budget(request)
        best = brute_budgeted(graph_of(request), budget).achieved_increase
        passed = record.increase <= best and record.cost <= budget
        return passed, f"increase {record.increase}, optimum {best}"
