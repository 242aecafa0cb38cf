"""Lévy model and claim-law schemas."""

import math
from enum import Enum
from typing import Annotated, Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings


class _FrozenModel(BaseModel):
    """Immutable schema base."""

    model_config = ConfigDict(frozen=True, extra="forbid")


class ExponentialLaw(_FrozenModel):
    """Exponential(rate) claim sizes."""

    kind: Literal["exponential"] = "exponential"
    rate: float = Field(..., gt=0, description="Rate μ")


class ErlangLaw(_FrozenModel):
    """Erlang(shape, rate) claim sizes."""

    kind: Literal["erlang"] = "erlang"
    shape: int = Field(..., ge=1, description="Number of phases m")
    rate: float = Field(..., gt=0, description="Phase rate μ")


class HyperexponentialLaw(_FrozenModel):
    """Finite mixture of exponentials."""

    kind: Literal["hyperexponential"] = "hyperexponential"
    weights: tuple[float, ...] = Field(..., min_length=1)
    rates: tuple[float, ...] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_mixture(self) -> Self:
        """Weights positive and summing to one, one rate per weight."""
        if len(self.weights) != len(self.rates):
            raise ValueError("weights and rates must have the same length")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be strictly positive")
        if any(m <= 0 for m in self.rates):
            raise ValueError("rates must be strictly positive")
        if not math.isclose(math.fsum(self.weights), 1.0, rel_tol=0, abs_tol=1e-12):
            raise ValueError("weights must sum to 1")
        return self


class ParetoLomaxLaw(_FrozenModel):
    """Lomax claim sizes with ccdf (1 + x/scale)^(-shape)."""

    kind: Literal["pareto_lomax"] = "pareto_lomax"
    shape: float = Field(..., gt=1, description="Tail index a (finite mean needs a > 1)")
    scale: float = Field(..., gt=0, description="Scale s")


class DeterministicLaw(_FrozenModel):
    """Point mass claim sizes."""

    kind: Literal["deterministic"] = "deterministic"
    mass: float = Field(..., gt=0, description="Claim size d")


JumpLaw = Annotated[
    ExponentialLaw | ErlangLaw | HyperexponentialLaw | ParetoLomaxLaw | DeterministicLaw,
    Field(discriminator="kind"),
]


class Orientation(str, Enum):
    """Which side the process is skip-free on."""

    SPECTRALLY_POSITIVE = "spectrally_positive"
    SPECTRALLY_NEGATIVE = "spectrally_negative"
    BROWNIAN_DRIFT = "brownian_drift"


class LevyModel(_FrozenModel):
    """
    A spectrally one-sided Lévy process.

    Spectrally positive: Y(t) = -r t + sum of claims (exponent φ(α) = log E e^{-αY(1)}).
    Spectrally negative: Y(t) = r t - sum of claims (cumulant Φ(α) = log E e^{αY(1)}).
    Brownian drift: Y(t) = μ_B t + σ W(t), handled through its cumulant.
    """

    orientation: Orientation
    premium_rate: float = Field(0.0, description="Drift r of the compound-Poisson kinds")
    arrival_rate: float = Field(0.0, ge=0, description="Claim arrival rate λ")
    claims: JumpLaw | None = None
    drift: float = Field(0.0, description="Mean rate μ_B of the Brownian kind")
    variance: float = Field(0.0, ge=0, description="Variance rate σ² of the Brownian kind")

    @model_validator(mode="after")
    def check_parameters(self) -> Self:
        """Each orientation uses its own parameter block."""
        if self.orientation is Orientation.BROWNIAN_DRIFT:
            if self.variance <= 0:
                raise ValueError("brownian_drift needs variance > 0")
            if self.claims is not None or self.arrival_rate != 0:
                raise ValueError("brownian_drift takes no claims or arrival rate")
        else:
            if self.premium_rate <= 0:
                raise ValueError("compound-Poisson models need premium_rate > 0")
            if self.claims is None:
                raise ValueError("compound-Poisson models need a claim law")
        return self

    @property
    def is_compound_poisson(self) -> bool:
        return self.orientation is not Orientation.BROWNIAN_DRIFT

    @property
    def is_spectrally_positive(self) -> bool:
        return self.orientation is Orientation.SPECTRALLY_POSITIVE

    @property
    def has_exponential_maximum(self) -> bool:
        """Running maxima over exponential horizons are exponential (SN and Brownian)."""
        return not self.is_spectrally_positive

    @classmethod
    def spectrally_positive(cls, premium_rate: float, arrival_rate: float, claims) -> Self:
        return cls(
            orientation=Orientation.SPECTRALLY_POSITIVE,
            premium_rate=premium_rate,
            arrival_rate=arrival_rate,
            claims=claims,
        )

    @classmethod
    def spectrally_negative(cls, premium_rate: float, arrival_rate: float, claims) -> Self:
        return cls(
            orientation=Orientation.SPECTRALLY_NEGATIVE,
            premium_rate=premium_rate,
            arrival_rate=arrival_rate,
            claims=claims,
        )

    @classmethod
    def brownian(cls, drift: float, variance: float) -> Self:
        return cls(orientation=Orientation.BROWNIAN_DRIFT, drift=drift, variance=variance)


class RootSolveConfig(_FrozenModel):
    """Tolerances of the guarded root finder."""

    abs_tol: float = Field(default_factory=lambda: settings.ROOT_ABS_TOL, gt=0)
    rel_tol: float = Field(default_factory=lambda: settings.ROOT_REL_TOL, gt=0)
    max_iter: int = Field(default_factory=lambda: settings.ROOT_MAX_ITER, ge=1)
