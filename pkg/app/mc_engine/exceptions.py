"""Monte-Carlo engine exceptions."""

from app.core.exceptions import ConfigurationError, DomainError, RegimeError
from app.mc_engine import constants


class UnstableChainError(RegimeError):
    """Exception raised when a steady-state Lindley chain has load >= 1."""

    def __init__(self, load: float):
        super().__init__(constants.UNSTABLE_CHAIN_ERROR.format(load=load))
        self.load = load


class MissingBurnInError(ConfigurationError):
    """Exception raised when steady-state sampling has no burn-in."""

    def __init__(self):
        super().__init__(constants.MISSING_BURN_IN_ERROR)


class EmptySampleError(DomainError):
    """Exception raised for statistics of an empty sample."""

    def __init__(self):
        super().__init__(constants.EMPTY_SAMPLE_ERROR)
