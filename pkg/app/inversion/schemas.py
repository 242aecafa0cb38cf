"""Inversion configuration and result schemas."""

from enum import Enum

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.config import settings
from app.inversion import constants


class InversionMethod(str, Enum):
    EULER = "euler"
    GAVER_STEHFEST = "gaver_stehfest"


class InversionConfig(BaseModel):
    """Numerical inversion settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    method: InversionMethod = InversionMethod.EULER
    euler_terms: int = Field(
        default_factory=lambda: settings.EULER_TERMS,
        ge=constants.EULER_MIN_TERMS,
        le=constants.EULER_MAX_TERMS,
    )
    euler_binomial_terms: int = Field(
        default_factory=lambda: settings.EULER_BINOMIAL_TERMS, ge=1, le=20
    )
    stehfest_order: int = Field(
        default_factory=lambda: settings.STEHFEST_ORDER,
        ge=constants.STEHFEST_MIN_ORDER,
        le=constants.STEHFEST_MAX_ORDER,
    )
    target_accuracy: float = Field(
        default_factory=lambda: settings.INVERSION_TARGET_ACCURACY, gt=0, lt=1
    )
    damping: float = Field(0.0, ge=0, description="Exponential damping rate c")

    @field_validator("stehfest_order")
    @classmethod
    def check_even(cls, v: int) -> int:
        if v % 2:
            raise ValueError("Gaver-Stehfest order must be even")
        return v

    @model_validator(mode="after")
    def check_damping(self) -> Self:
        if self.method is InversionMethod.GAVER_STEHFEST and self.damping > 0:
            raise ValueError("damping is only available with Euler summation")
        return self


class TailCurve(BaseModel):
    """A complementary distribution function on an ordered grid of u >= 0."""

    model_config = ConfigDict(frozen=True)

    u: list[float] = Field(..., min_length=1)
    ccdf: list[float] = Field(..., min_length=1)
    max_clip_deviation: float = Field(0.0, ge=0)
    monotone_adjustment: float = Field(0.0, ge=0)
    heavy_tail_warning: bool = False

    @model_validator(mode="after")
    def check_curve(self) -> Self:
        if len(self.u) != len(self.ccdf):
            raise ValueError("u and ccdf must have the same length")
        if any(x < 0 for x in self.u):
            raise ValueError("u values must be >= 0")
        if any(b < a for a, b in zip(self.u, self.u[1:], strict=False)):
            raise ValueError("u values must be ordered")
        if any(not 0 <= p <= 1 for p in self.ccdf):
            raise ValueError("ccdf values must lie in [0, 1]")
        if any(b > a for a, b in zip(self.ccdf, self.ccdf[1:], strict=False)):
            raise ValueError("ccdf values must be nonincreasing")
        return self


class ExponentQuadratureConfig(BaseModel):
    """Panels, nodes and Monte-Carlo effort of the exponent estimator."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    initial_panels: int = Field(4, ge=1)
    max_panels: int = Field(64, ge=1)
    nodes_per_panel: int = Field(8, ge=2, le=64)
    paths_per_node: int = Field(20_000, ge=2)
    cutoff: float = Field(1e-12, gt=0, lt=1, description="Truncate where e^{-βt} drops below")

    @model_validator(mode="after")
    def check_panels(self) -> Self:
        if self.max_panels < self.initial_panels:
            raise ValueError("max_panels must be >= initial_panels")
        return self


class ExponentEstimate(BaseModel):
    """Quadrature-plus-Monte-Carlo estimate of -log E e^{-αY_{β,ω}}."""

    model_config = ConfigDict(frozen=True)

    estimate: float
    stderr: float = Field(..., ge=0)
    implied_transform: float
    panels: int
    nodes: int
    converged: bool
