"""Run configuration and outcome schemas."""

from enum import Enum
from pathlib import Path

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.inversion import ExponentQuadratureConfig, InversionConfig
from app.levy_models import LevyModel, RootSolveConfig
from app.mc_engine import SimConfig
from app.runs import constants
from app.transforms import InspectionScheme


class Command(str, Enum):
    EVAL_TRANSFORM = "eval-transform"
    INVERT = "invert"
    SIMULATE = "simulate"
    VERIFY = "verify"
    RISK = "risk"
    RULE_OF_THUMB = "rule-of-thumb"

    @property
    def file_stem(self) -> str:
        return self.value.replace("-", "_")


class TransformTarget(str, Enum):
    INSPECTED_MAX = "inspected_max"
    RUNNING_MAX = "running_max"
    ALL_TIME_MAX = "all_time_max"
    INCREMENT_PLUS = "increment_plus"
    INCREMENT_MINUS = "increment_minus"


class Grids(BaseModel):
    """Evaluation grids; which ones are needed depends on the command."""

    model_config = ConfigDict(extra="forbid")

    alpha: list[float] = Field(default_factory=list, description="Transform arguments α >= 0")
    u: list[float] = Field(default_factory=list, description="Levels u >= 0")
    epsilon: list[float] = Field(default_factory=list, description="Rule-of-thumb tolerances")
    frequencies: list[float] = Field(
        default_factory=lambda: list(constants.DEFAULT_FREQUENCIES),
        description="Characteristic-function frequencies of the min/max sum check",
    )

    @model_validator(mode="after")
    def check_grids(self) -> Self:
        if any(a < 0 for a in self.alpha):
            raise ValueError("alpha values must be >= 0")
        if any(b < a for a, b in zip(self.alpha, self.alpha[1:], strict=False)):
            raise ValueError("alpha values must be ordered")
        if any(x < 0 for x in self.u):
            raise ValueError("u values must be >= 0")
        if any(b < a for a, b in zip(self.u, self.u[1:], strict=False)):
            raise ValueError("u values must be ordered")
        if any(not 0 < e < 1 for e in self.epsilon):
            raise ValueError("epsilon values must lie in (0, 1)")
        return self


class RunConfig(BaseModel):
    """A single declarative run of the toolkit."""

    model_config = ConfigDict(extra="forbid")

    command: Command
    model: LevyModel
    scheme: InspectionScheme | None = None
    transform: TransformTarget = TransformTarget.INSPECTED_MAX
    grids: Grids = Field(default_factory=Grids)
    simulation: SimConfig | None = None
    inversion: InversionConfig = Field(default_factory=InversionConfig)
    root: RootSolveConfig = Field(default_factory=RootSolveConfig)
    exponent: ExponentQuadratureConfig = Field(default_factory=ExponentQuadratureConfig)
    exponent_alpha: float = Field(constants.DEFAULT_EXPONENT_ALPHA, ge=0)
    output_dir: str | None = Field(None, description="Used when --out is not given")

    @model_validator(mode="after")
    def check_command(self) -> Self:
        needs = {
            Command.EVAL_TRANSFORM: ("alpha",),
            Command.INVERT: ("u",),
            Command.SIMULATE: ("alpha",),
            Command.VERIFY: ("alpha",),
            Command.RISK: ("u",),
            Command.RULE_OF_THUMB: ("epsilon",),
        }[self.command]
        for grid in needs:
            if not getattr(self.grids, grid):
                raise ValueError(
                    constants.MISSING_GRID_ERROR.format(command=self.command.value, grid=grid)
                )
        if self.command in (Command.SIMULATE, Command.VERIFY) and self.simulation is None:
            raise ValueError(
                constants.MISSING_SIMULATION_ERROR.format(command=self.command.value)
            )
        uses_scheme = self.command is not Command.RULE_OF_THUMB and not (
            self.command is Command.EVAL_TRANSFORM
            and self.transform is TransformTarget.ALL_TIME_MAX
        )
        if uses_scheme and self.scheme is None:
            raise ValueError(f"command {self.command.value} needs a scheme block")
        return self

    @property
    def seed(self) -> int | None:
        return None if self.simulation is None else self.simulation.seed


class RunOutcome(BaseModel):
    """Exit status and files of one run."""

    exit_code: int
    passed: bool
    files: list[Path] = Field(default_factory=list)
    message: str | None = None
