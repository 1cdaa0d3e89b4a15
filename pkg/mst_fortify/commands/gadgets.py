from ..graph import WeightedGraph, mst_weight
from ..instance import format_instance
from ..oracle import gen_kcut_gadget, gen_mmstu_instance
from ..records import ResultRecord, SolveRequest, TraceSummary
from .base import BaseSolverCommand, CommandError
from .render import graph_of, parameters


def _generated(name: str, request: SolveRequest, g: WeightedGraph) -> ResultRecord:
    return ResultRecord(
        solver=name,
        parameters=parameters(request),
        instance=format_instance(g),
        trace=TraceSummary(
            extra={
                "vertices": g.vertex_count,
                "edges": g.edge_count,
                "mst_weight": int(mst_weight(g)),
            }
        ),
    )


class GenKcutGadgetCommand(BaseSolverCommand):
    name = "gen-kcut-gadget"
    description = "Targeted instance whose cheapest lift for target k - 1 costs the base graph's min k-cut."
    parameters = ("clique_size",)

    def solve(self, request: SolveRequest) -> ResultRecord:
        if request.clique_size < 2:
            raise CommandError("--clique-size must be at least 2")
        return _generated(self.name, request, gen_kcut_gadget(graph_of(request), request.clique_size))


class GenMmstuCommand(BaseSolverCommand):
    name = "gen-mmstu"
    description = "Unit-cost, unit-cap, zero-weight copy of the base graph for min k-cut budget sweeps."

    def solve(self, request: SolveRequest) -> ResultRecord:
        return _generated(self.name, request, gen_mmstu_instance(graph_of(request)))
