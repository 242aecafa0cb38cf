"""Toolkit-wide exception hierarchy.

Every error carries the process exit code the CLI reports for it.
"""

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIGURATION = 2
EXIT_REGIME = 3
EXIT_NON_CONVERGENCE = 4


class ToolkitError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = EXIT_REGIME

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigurationError(ToolkitError):
    """Raised when a configuration cannot be used as given."""

    exit_code = EXIT_CONFIGURATION


class DomainError(ToolkitError):
    """Raised when an argument lies outside an operation's domain."""

    exit_code = EXIT_REGIME


class RegimeError(DomainError):
    """Raised when a model is in a regime an operation does not support."""


class UnsupportedMomentError(RegimeError):
    """Raised when a requested moment is infinite."""

    def __init__(self, detail: str, mean: float | None = None):
        super().__init__(detail)
        self.mean = mean


class SolverError(ToolkitError):
    """Raised when a numerical procedure fails to converge."""

    exit_code = EXIT_NON_CONVERGENCE

    def __init__(self, detail: str, bracket: tuple[float, float] | None = None):
        if bracket is not None:
            detail = f"{detail} (last bracket [{bracket[0]:.17g}, {bracket[1]:.17g}])"
        super().__init__(detail)
        self.bracket = bracket
