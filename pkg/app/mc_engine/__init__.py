"""Monte-Carlo engine domain module."""

from app.mc_engine.paths import PathBatch, sample_levels, simulate_block
from app.mc_engine.schemas import (
    EmpiricalSample,
    Estimate,
    IdentityRow,
    KsResult,
    MinMaxResult,
    SimConfig,
)
from app.mc_engine.service import SampleStatistics, SimulationService
from app.mc_engine.streams import derive_generator
from app.mc_engine.verification import VerificationService

__all__ = [
    "EmpiricalSample",
    "Estimate",
    "IdentityRow",
    "KsResult",
    "MinMaxResult",
    "PathBatch",
    "SampleStatistics",
    "SimConfig",
    "SimulationService",
    "VerificationService",
    "derive_generator",
    "sample_levels",
    "simulate_block",
]
