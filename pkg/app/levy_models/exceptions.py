"""Levy models exceptions."""

from app.core.exceptions import DomainError, RegimeError, SolverError
from app.levy_models import constants


class OutsideConvergenceRegionError(DomainError):
    """Exception raised when a transform argument is outside the convergence region."""

    def __init__(self, kind: str, alpha: complex, boundary: float, strict: bool = True):
        super().__init__(
            constants.OUTSIDE_REGION_ERROR.format(
                kind=kind, alpha=alpha, relation=">" if strict else ">=", boundary=boundary
            )
        )
        self.boundary = boundary


class HeavyTailRegimeError(RegimeError):
    """Exception raised when a light-tailed operation meets a heavy-tailed law."""

    def __init__(self, operation: str, kind: str):
        super().__init__(constants.HEAVY_TAIL_ERROR.format(operation=operation, kind=kind))


class OrientationError(DomainError):
    """Exception raised when an operation is applied to the wrong kind of model."""

    def __init__(self, operation: str, orientation: str, expected: str):
        super().__init__(
            constants.ORIENTATION_ERROR.format(
                operation=operation, orientation=orientation, expected=expected
            )
        )


class InfiniteSupremumError(RegimeError):
    """Exception raised when β = 0 is requested but the supremum is infinite."""

    def __init__(self, condition: str):
        super().__init__(constants.INFINITE_SUPREMUM_ERROR.format(condition=condition))


class RootNotFoundError(SolverError):
    """Exception raised when the bracketing root finder fails."""
