"""Pytest configuration and fixtures."""

import json
from pathlib import Path

import pytest

from app.levy_models import ExponentialLaw, LevyModel, ParetoLomaxLaw, RootSolveConfig
from app.mc_engine import SimConfig

SEED = 20240601


@pytest.fixture
def sp_model() -> LevyModel:
    """SP(1, 0.5, Exp(1)), the canonical Cramér-Lundberg model."""
    return LevyModel.spectrally_positive(1.0, 0.5, ExponentialLaw(rate=1.0))


@pytest.fixture
def sn_model() -> LevyModel:
    """SN(1, 0.5, Exp(1))."""
    return LevyModel.spectrally_negative(1.0, 0.5, ExponentialLaw(rate=1.0))


@pytest.fixture
def brownian_model() -> LevyModel:
    """Brownian motion with drift -1 and unit variance."""
    return LevyModel.brownian(-1.0, 1.0)


@pytest.fixture
def pareto_model() -> LevyModel:
    """SP(1, 0.5, ParetoLomax(2, 1)): heavy tails, E B = 1, infinite E B²."""
    return LevyModel.spectrally_positive(1.0, 0.5, ParetoLomaxLaw(shape=2.0, scale=1.0))


@pytest.fixture
def root_cfg() -> RootSolveConfig:
    return RootSolveConfig()


@pytest.fixture
def small_sim() -> SimConfig:
    """Everyday statistical checks."""
    return SimConfig(paths=40_000, seed=SEED, block_size=1000, burn_in="auto")


@pytest.fixture
def large_sim() -> SimConfig:
    """Million-path acceptance checks."""
    return SimConfig(paths=1_000_000, seed=SEED, block_size=65_536, threads=4, burn_in="auto")


@pytest.fixture
def write_config(tmp_path):
    """Write a run configuration document and return its path."""

    def _write(document: dict, name: str = "run.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def sp_block() -> dict:
    """Run-configuration model block of the canonical SP model."""
    return {
        "orientation": "spectrally_positive",
        "premium_rate": 1.0,
        "arrival_rate": 0.5,
        "claims": {"kind": "exponential", "rate": 1.0},
    }
