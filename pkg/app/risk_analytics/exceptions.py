"""Risk analytics exceptions."""

from app.core.exceptions import DomainError, RegimeError
from app.risk_analytics import constants


class NotExponentialClaimsError(RegimeError):
    """Exception raised when a closed form needs exponential claims."""

    def __init__(self, kind: str):
        super().__init__(constants.NOT_EXPONENTIAL_ERROR.format(kind=kind))


class LightTailRegimeError(RegimeError):
    """Exception raised when a heavy-tailed asymptote meets a light-tailed law."""

    def __init__(self, operation: str, kind: str):
        super().__init__(constants.LIGHT_TAIL_ERROR.format(operation=operation, kind=kind))


class EpsilonRangeError(DomainError):
    """Exception raised for a tolerance outside (0, 1)."""

    def __init__(self, epsilon: float):
        super().__init__(constants.EPSILON_ERROR.format(epsilon=epsilon))
