"""Simulation configuration and result schemas."""

from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings


class SimConfig(BaseModel):
    """
    Path count, seed and scheduling of a simulation.

    The model and inspection scheme are passed alongside. Results depend on
    (seed, paths, block_size) only; `threads` affects speed.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    paths: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)
    burn_in: int | Literal["auto"] | None = None
    block_size: int = Field(default_factory=lambda: settings.SIM_BLOCK_SIZE, ge=1)
    threads: int = Field(default_factory=lambda: settings.SIM_THREADS, ge=1)

    @model_validator(mode="after")
    def check_burn_in(self) -> Self:
        if isinstance(self.burn_in, int) and self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        return self


class EmpiricalSample(BaseModel):
    """A seeded Monte-Carlo sample with its provenance."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    quantity: str
    master_seed: int
    stream_id: int
    batches: int = Field(1, ge=1, description="Independent blocks the values come from")
    steady_state: bool = False
    inspection_counts: np.ndarray | None = None

    @model_validator(mode="after")
    def check_values(self) -> Self:
        if self.values.ndim != 1 or self.values.size < 1:
            raise ValueError("a sample needs at least one value")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("sample values must be finite")
        return self

    @property
    def size(self) -> int:
        return int(self.values.size)


class Estimate(BaseModel):
    """A Monte-Carlo estimate with its standard error."""

    model_config = ConfigDict(frozen=True)

    value: float
    stderr: float = Field(..., ge=0)


class KsResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    statistic: float
    critical_value: float
    level: float
    passed: bool


class MinMaxResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    frequencies: list[float]
    deviations: list[float]
    stderrs: list[float]
    max_deviation: float
    passed: bool


class IdentityRow(BaseModel):
    """One u of the bankruptcy-ruin identity check."""

    model_config = ConfigDict(frozen=True)

    u: float
    lhs: float
    rhs: float
    stderr: float
    passed: bool
