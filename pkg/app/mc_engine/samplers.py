"""Samplers of Lindley-chain inputs, each a callable (rng, size) -> draws."""

from collections.abc import Callable

import numpy as np

from app.levy_models import JumpLawService, LevyModel
from app.mc_engine.paths import sample_levels, simulate_block

Sampler = Callable[[np.random.Generator, int], np.ndarray]


def zero_sampler() -> Sampler:
    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        return np.zeros(size)

    return sample


def exponential_sampler(rate: float) -> Sampler:
    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.exponential(1 / rate, size)

    return sample


def running_max_sampler(model: LevyModel, zeta: float) -> Sampler:
    """Draws of Ȳ(T_ζ); with ζ = β + ω these are the Z⁺ steps of the inspection chain."""

    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        return simulate_block(model, zeta, 0.0, rng, size).running_max

    return sample


def increment_sampler(model: LevyModel, phase_rate: float, k: int = 1) -> Sampler:
    """Draws of Y(τ) with τ ~ Erlang(k, phase_rate)."""

    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        return sample_levels(model, rng.gamma(k, 1 / phase_rate, size), rng, size)

    return sample


def residual_sum_sampler(model: LevyModel, load: float) -> Sampler:
    """Geometric sums of stationary-excess claims with P(G >= n) = load^n."""

    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        counts = rng.geometric(1 - load, size) - 1
        residuals = JumpLawService.sample_residual_jumps(model.claims, rng, int(counts.sum()))
        return np.bincount(np.repeat(np.arange(size), counts), weights=residuals, minlength=size)

    return sample
