"""Ruin and bankruptcy report schemas."""

import math
from enum import Enum

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.levy_models import JumpLaw, JumpLawService


class Regime(str, Enum):
    LIGHT = "light"
    HEAVY = "heavy"


class AsymptoteReport(BaseModel):
    """Constants of the large-u ruin and bankruptcy asymptotes."""

    model_config = ConfigDict(frozen=True)

    regime: Regime
    omega: float | None = None
    theta_star: float | None = None
    gamma: float | None = None
    gamma_tilde: float | None = None
    gamma_star_omega: float | None = None
    fixed_point_residual: float | None = None
    rejected_root: float | None = None
    prefactor: float | None = None
    warning: str | None = None

    @model_validator(mode="after")
    def check_regime(self) -> Self:
        if self.regime is Regime.LIGHT:
            if self.theta_star is None or self.gamma is None:
                raise ValueError("light-tailed reports carry theta_star and gamma")
            if self.gamma_star_omega is not None:
                if not 0 < self.gamma_star_omega < 1:
                    raise ValueError("gamma_star_omega must lie in (0, 1)")
                if not math.isclose(
                    self.gamma_tilde, self.gamma * self.gamma_star_omega, rel_tol=1e-12
                ):
                    raise ValueError("gamma_tilde must equal gamma * gamma_star_omega")
        elif self.theta_star is not None or self.gamma is not None:
            raise ValueError("heavy-tailed reports carry no theta_star or gamma")
        return self


class ResidualLaw(BaseModel):
    """Stationary-excess law of a claim size."""

    model_config = ConfigDict(frozen=True)

    base: JumpLaw

    def ccdf(self, u):
        return JumpLawService.residual_ccdf(self.base, u)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return JumpLawService.sample_residual_jumps(self.base, rng, size)


class TailRow(BaseModel):
    """One u of a ruin or bankruptcy curve."""

    model_config = ConfigDict(frozen=True)

    u: float
    value: float
    asymptote: float | None
    ratio: float | None


class RuleOfThumbRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(..., gt=0, lt=1)
    omega_min: float
    omega_exact: float
    omega_exact_solved: float
    limit: float
