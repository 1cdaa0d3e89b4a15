import asyncio
from abc import ABCMeta, abstractmethod
from dataclasses import dataclass
from typing import Any, ClassVar

from ..errors import FortifyError, SizeGuardError
from ..records import CheckOutcome, ResultRecord, SolveRequest


class BaseSolverCommand(metaclass=ABCMeta):
    """Abstract base class for solver commands shared by the CLI and the HTTP service."""

    name: ClassVar[str]
    description: ClassVar[str]
    parameters: ClassVar[tuple[str, ...]] = ()
    oracle: ClassVar[str | None] = None

    @abstractmethod
    def solve(self, request: SolveRequest) -> ResultRecord:
        """Runs the solver on a validated request."""
        ...

    def compare(self, request: SolveRequest, record: ResultRecord) -> tuple[bool, str]:
        """Checks ``record`` against the oracle named by ``oracle``."""
        raise NotImplementedError

    def check(self, request: SolveRequest, record: ResultRecord) -> CheckOutcome:
        if self.oracle is None:
            return CheckOutcome(oracle="none", passed=True, skipped=True, detail="no oracle for this solver")
        try:
            passed, detail = self.compare(request, record)
        except SizeGuardError as e:
            return CheckOutcome(oracle=self.oracle, passed=True, skipped=True, detail=e.message)
        return CheckOutcome(oracle=self.oracle, passed=passed, detail=detail)

    async def __call__(self, request: SolveRequest) -> "CommandResult":
        missing = [name for name in self.parameters if getattr(request, name) is None]
        if missing:
            raise CommandError(f"{self.name} needs {', '.join('--' + name.replace('_', '-') for name in missing)}")
        record = await asyncio.to_thread(self.solve, request)
        if request.check:
            outcome = await asyncio.to_thread(self.check, request, record)
            record = record.model_copy(update={"check": outcome})
        return CommandResult(record=record)

    def to_params(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "parameters": list(self.parameters),
            "oracle": self.oracle,
        }


@dataclass(kw_only=True, frozen=True)
class CommandResult:
    """Represents the result of a solver command."""

    record: ResultRecord | None = None
    error: str | None = None

    @property
    def violated(self) -> bool:
        """True when a requested oracle check ran and failed."""
        return bool(
            self.record and self.record.check and not self.record.check.skipped and not self.record.check.passed
        )


class CommandFailure(CommandResult):
    """A CommandResult that represents a failure."""


class CommandError(FortifyError):
    """Raised when a command receives unusable parameters."""
