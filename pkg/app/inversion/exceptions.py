"""Inversion exceptions."""

from app.core.exceptions import ConfigurationError, DomainError
from app.inversion import constants


class RealOnlyEvaluatorError(ConfigurationError):
    """Exception raised when Euler summation meets a real-only transform."""

    def __init__(self, reason: str):
        super().__init__(constants.REAL_ONLY_ERROR.format(reason=reason))


class NoKillingError(DomainError):
    """Exception raised when the exponent integral is requested without killing."""

    def __init__(self, beta: float):
        super().__init__(constants.NO_KILLING_ERROR.format(beta=beta))
