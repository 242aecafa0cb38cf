"""Transforms exceptions."""

from app.core.exceptions import DomainError, RegimeError
from app.transforms import constants


class NonPositiveRateError(DomainError):
    """Exception raised when a killing or inspection rate is not positive."""

    def __init__(self, name: str, value: float):
        super().__init__(constants.NONPOSITIVE_RATE_ERROR.format(name=name, value=value))


class CountArgumentError(DomainError):
    """Exception raised when a phase count or inspection count is not a valid integer."""

    def __init__(self, name: str, minimum: int, value):
        super().__init__(
            constants.COUNT_ARGUMENT_ERROR.format(name=name, minimum=minimum, value=value)
        )


class ErlangSchemeError(RegimeError):
    """Exception raised when a closed form is requested for Erlang inspection."""

    def __init__(self, k: int):
        super().__init__(constants.ERLANG_SCHEME_ERROR.format(k=k))
