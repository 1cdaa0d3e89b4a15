"""Exception hierarchy shared by the solvers, the oracles and the command layer."""


class FortifyError(Exception):
    """Raised when a solver cannot honour its contract."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class GraphError(FortifyError):
    """Raised when a graph or an edge set violates a construction invariant."""


class PerturbationError(FortifyError):
    """Raised when upgrade amounts are negative, fractional under the integral flag, or over a cap."""


class WeightClassError(FortifyError):
    """Raised when a pivot weight does not occur in the current weights."""


class StrengthError(FortifyError):
    """Raised when strength is requested on a graph with fewer than two vertices."""


class NoLiftableSetError(FortifyError):
    """Raised when every candidate edge has reached its cap."""


class UnreachableTargetError(FortifyError):
    """Raised when caps keep a target increase out of reach."""

    def __init__(self, message: str, *, max_increase):
        super().__init__(message)
        self.max_increase = max_increase


class SizeGuardError(FortifyError):
    """Raised when an exhaustive enumeration would exceed its configured guard."""


class UniformWeightError(FortifyError):
    """Raised when a uniform-weight solver receives non-uniform or capped input."""


class FlowError(FortifyError):
    """Raised for invalid networks, infeasible demands and unreachable sinks."""


class InstanceParseError(FortifyError):
    """Raised when an instance file does not follow the edge-list grammar."""

    def __init__(self, message: str, *, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class VerificationError(FortifyError):
    """Raised when a structural check on a decomposition fails."""

    def __init__(self, message: str, *, invariant: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class ConsistencyError(FortifyError):
    """Raised when an internal recomputation disagrees with the running state."""
