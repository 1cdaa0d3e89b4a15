from ..decomposition import decompose_and_verify
from ..errors import VerificationError
from ..instance import format_rational
from ..oracle import brute_budgeted, brute_targeted, optimality_structure_check
from ..raise_mst import raise_mst
from ..records import CheckOutcome, ResultRecord, SolveRequest, TraceSummary
from ..strength import coarsest_first
from .base import BaseSolverCommand
from .render import graph_of, integral_budget, perturbation_of, positive_target, solution_record


class _StructureChecked(BaseSolverCommand):
    oracle = "optimality_structure_check"

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        report = optimality_structure_check(graph_of(request), perturbation_of(record, integral=True))
        if report.passed:
            return True, f"{len(report.checked)} lifted non-tree edges sit at their cycle maximum"
        worst = report.violations[0]
        return False, f"edge {worst.edge} has weight {worst.weight}, cycle maximum {worst.cycle_max}"


class OracleBudgetedCommand(_StructureChecked):
    name = "oracle-budgeted"
    description = "Exhaustive search for the largest integral increase within a budget."
    parameters = ("budget",)

    def solve(self, request: SolveRequest) -> ResultRecord:
        solution = brute_budgeted(graph_of(request), integral_budget(request))
        return solution_record(self.name, request, solution)


class OracleTargetedCommand(_StructureChecked):
    name = "oracle-targeted"
    description = "Exhaustive search for the cheapest integral lift reaching a target."
    parameters = ("target",)

    def solve(self, request: SolveRequest) -> ResultRecord:
        solution = brute_targeted(graph_of(request), positive_target(request))
        return solution_record(self.name, request, solution)


class VerifyDecompositionCommand(BaseSolverCommand):
    name = "verify-decomposition"
    description = (
        "Decomposes an optimal continuous solution along the greedy trace and checks every segment "
        "is a proper lift; without --weights the optimum comes from a coarsest-first greedy run."
    )
    parameters = ("budget",)
    oracle = "decomposition"

    def solve(self, request: SolveRequest) -> ResultRecord:
        g = graph_of(request)
        trace = raise_mst(g, request.budget)
        w_star = request.weights
        if w_star is None:
            w_star = raise_mst(g, request.budget, select=coarsest_first).final_weights
        record = ResultRecord(solver=self.name, parameters={"budget": format_rational(request.budget)})
        try:
            decomposition = decompose_and_verify(trace, w_star)
        except VerificationError as e:
            return record.model_copy(
                update={"check": CheckOutcome(oracle=self.oracle, passed=False, detail=e.message)}
            )
        extra = {
            "deltas": [format_rational(value) for value in decomposition.deltas],
            "betas": [format_rational(value) for value in decomposition.betas],
            "segments": [
                {
                    "phase": segment.phase.value,
                    "start": format_rational(segment.start),
                    "end": format_rational(segment.end),
                    "edges": sorted(segment.edges),
                    "amount": format_rational(segment.amount),
                }
                for segment in decomposition.segments
            ],
        }
        return record.model_copy(
            update={
                "increase": trace.increase,
                "cost": trace.spent,
                "trace": TraceSummary(breakpoints=list(decomposition.breakpoints), extra=extra),
                "check": CheckOutcome(
                    oracle=self.oracle,
                    passed=True,
                    detail=f"{len(decomposition.segments)} proper lift segments",
                ),
            }
        )

    def check(self, request: SolveRequest, record: ResultRecord) -> CheckOutcome:
        return record.check
