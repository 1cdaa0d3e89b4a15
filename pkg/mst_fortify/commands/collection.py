"""Collection class dispatching solver commands by name."""

import logging
from typing import Any

from ..errors import FortifyError
from ..records import SolveRequest
from .base import BaseSolverCommand, CommandFailure, CommandResult

logger = logging.getLogger(__name__)


class SolverCollection:
    """A collection of solver commands."""

    def __init__(self, *commands: BaseSolverCommand):
        self.commands = commands
        self.command_map = {command.to_params()["name"]: command for command in commands}

    def to_params(self) -> list[dict[str, Any]]:
        return [command.to_params() for command in self.commands]

    async def run(self, *, name: str, request: SolveRequest) -> CommandResult:
        command = self.command_map.get(name)
        if not command:
            return CommandFailure(error=f"Unknown solver {name!r}; choose one of {', '.join(self.command_map)}")
        try:
            return await command(request)
        except FortifyError as e:
            logger.debug("%s failed: %s", name, e.message)
            return CommandFailure(error=e.message)
