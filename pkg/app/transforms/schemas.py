"""Inspection scheme and transform curve schemas."""

from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.transforms import constants


class InspectionScheme(BaseModel):
    """
    Inspection epochs and exponential killing.

    Poisson(ω) inspects after i.i.d. exp(ω) intervals; Erlang(k) after
    Erlang(k, kω) intervals, i.e. every k-th mark of a rate-kω Poisson stream.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["poisson", "erlang"] = "poisson"
    beta: float = Field(..., ge=0, description="Killing rate β")
    omega: float = Field(..., gt=0, description="Inspection rate ω")
    k: int = Field(1, ge=1, description="Erlang phases per inspection interval")

    @model_validator(mode="after")
    def check_phases(self) -> Self:
        if self.kind == "poisson" and self.k != 1:
            raise ValueError("poisson inspection takes k = 1")
        return self

    @property
    def phase_rate(self) -> float:
        """Rate kω of the marks whose every k-th one is an inspection."""
        return self.k * self.omega

    @classmethod
    def poisson(cls, beta: float, omega: float) -> Self:
        return cls(kind="poisson", beta=beta, omega=omega)

    @classmethod
    def erlang(cls, beta: float, omega: float, k: int) -> Self:
        return cls(kind="erlang", beta=beta, omega=omega, k=k)


class LstCurve(BaseModel):
    """A transform α ↦ E e^{-αX} tabulated on an ordered grid of α >= 0."""

    model_config = ConfigDict(frozen=True)

    arguments: list[float] = Field(..., min_length=1)
    values: list[float] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_curve(self) -> Self:
        if len(self.arguments) != len(self.values):
            raise ValueError("arguments and values must have the same length")
        if any(a < 0 for a in self.arguments):
            raise ValueError("transform arguments must be >= 0")
        if any(b < a for a, b in zip(self.arguments, self.arguments[1:], strict=False)):
            raise ValueError("transform arguments must be ordered")
        slack = constants.CURVE_SLACK
        if any(not 0 < v <= 1 + slack for v in self.values):
            raise ValueError("transform values must lie in (0, 1]")
        if any(b > a + slack for a, b in zip(self.values, self.values[1:], strict=False)):
            raise ValueError("transform values must be nonincreasing")
        for a, v in zip(self.arguments, self.values, strict=True):
            if a == 0 and abs(v - 1) > slack:
                raise ValueError("transform value at alpha=0 must be 1")
        return self

    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.arguments, self.values, strict=True))
