"""Levy models domain module."""

from app.levy_models.schemas import (
    DeterministicLaw,
    ErlangLaw,
    ExponentialLaw,
    HyperexponentialLaw,
    JumpLaw,
    LevyModel,
    Orientation,
    ParetoLomaxLaw,
    RootSolveConfig,
)
from app.levy_models.service import JumpLawService, LevyModelService

__all__ = [
    "DeterministicLaw",
    "ErlangLaw",
    "ExponentialLaw",
    "HyperexponentialLaw",
    "JumpLaw",
    "JumpLawService",
    "LevyModel",
    "LevyModelService",
    "Orientation",
    "ParetoLomaxLaw",
    "RootSolveConfig",
]
