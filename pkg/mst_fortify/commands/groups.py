from dataclasses import dataclass
from typing import Literal

from .base import BaseSolverCommand
from .collection import SolverCollection
from .flows import FlowUpgradeCommand, PathUpgradeCommand
from .gadgets import GenKcutGadgetCommand, GenMmstuCommand
from .greedy import BudgetedCommand, CurveCommand, RaiseCommand, TargetedCommand
from .oracle import OracleBudgetedCommand, OracleTargetedCommand, VerifyDecompositionCommand
from .uniform import HeuristicMincutCommand, UniformBudgetedCommand, UniformExactCommand

CommandFamily = Literal["greedy", "uniform", "flows", "oracle", "gadgets"]


@dataclass(frozen=True, kw_only=True)
class CommandGroup:
    family: CommandFamily
    commands: list[type[BaseSolverCommand]]
    description: str = ""


COMMAND_GROUPS: list[CommandGroup] = [
    CommandGroup(
        family="greedy",
        commands=[CurveCommand, RaiseCommand, BudgetedCommand, TargetedCommand],
        description="continuous greedy and its discrete roundings",
    ),
    CommandGroup(
        family="uniform",
        commands=[UniformExactCommand, UniformBudgetedCommand, HeuristicMincutCommand],
        description="graphs with uniform starting weights",
    ),
    CommandGroup(
        family="flows",
        commands=[FlowUpgradeCommand, PathUpgradeCommand],
        description="max-flow and shortest-path upgrading",
    ),
    CommandGroup(
        family="oracle",
        commands=[OracleBudgetedCommand, OracleTargetedCommand, VerifyDecompositionCommand],
        description="exhaustive search and decomposition checks",
    ),
    CommandGroup(
        family="gadgets",
        commands=[GenKcutGadgetCommand, GenMmstuCommand],
        description="reduction instance generators",
    ),
]

COMMANDS_BY_NAME: dict[str, type[BaseSolverCommand]] = {
    command.name: command for group in COMMAND_GROUPS for command in group.commands
}


def default_collection() -> SolverCollection:
    return SolverCollection(*(command() for command in COMMANDS_BY_NAME.values()))
