from ..flows import FlowNetwork, max_flow, mmf_upgrade, msp_upgrade, shortest_path_length
from ..instance import parse_network
from ..oracle import brute_flow_upgrade, brute_path_upgrade
from ..records import ResultRecord, SolveRequest, TraceSummary
from .base import BaseSolverCommand, CommandError
from .render import entries, integral_budget, parameters


def network_of(request: SolveRequest) -> FlowNetwork:
    if not request.instance.strip():
        raise CommandError("no instance given")
    return parse_network(request.instance, source=request.source, sink=request.sink)


class FlowUpgradeCommand(BaseSolverCommand):
    name = "flow-upgrade"
    description = "Integral capacity upgrades within a budget maximizing the source-sink max flow."
    parameters = ("budget",)
    oracle = "brute_flow_upgrade"

    def solve(self, request: SolveRequest) -> ResultRecord:
        net = network_of(request)
        base, _ = max_flow(net)
        upgrade = mmf_upgrade(net, integral_budget(request))
        return ResultRecord(
            solver=self.name,
            parameters=parameters(request),
            increase=upgrade.value - base,
            cost=upgrade.cost,
            perturbation=entries(upgrade.amounts),
            trace=TraceSummary(extra={"base_value": base, "value": upgrade.value}),
        )

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        best = brute_flow_upgrade(network_of(request), integral_budget(request))
        value = record.trace.extra["value"]
        return value == best.value, f"flow {value}, optimum {best.value}"


class PathUpgradeCommand(BaseSolverCommand):
    name = "path-upgrade"
    description = "Integral arc lengthenings within a budget maximizing the shortest source-sink path."
    parameters = ("budget",)
    oracle = "brute_path_upgrade"

    def solve(self, request: SolveRequest) -> ResultRecord:
        net = network_of(request)
        base = shortest_path_length(net)
        upgrade = msp_upgrade(net, integral_budget(request))
        return ResultRecord(
            solver=self.name,
            parameters=parameters(request),
            increase=upgrade.value - base,
            cost=upgrade.cost,
            perturbation=entries(upgrade.amounts),
            trace=TraceSummary(extra={"base_length": base, "length": upgrade.value}),
        )

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        best = brute_path_upgrade(network_of(request), integral_budget(request))
        length = record.trace.extra["length"]
        return length == best.value, f"length {length}, optimum {best.value}"
