from .base import BaseSolverCommand, CommandError, CommandFailure, CommandResult
from .collection import SolverCollection
from .groups import COMMAND_GROUPS, COMMANDS_BY_NAME, default_collection

__ALL__ = [
    BaseSolverCommand,
    COMMAND_GROUPS,
    COMMANDS_BY_NAME,
    CommandError,
    CommandFailure,
    CommandResult,
    SolverCollection,
    default_collection,
]
