"""Monte-Carlo sampling of running and inspected maxima."""

import logging
import math
from collections.abc import Callable
from pathlib import Path

import numpy as np

from app.common.output import write_csv
from app.core.exceptions import DomainError
from app.levy_models import LevyModel, LevyModelService, RootSolveConfig
from app.levy_models.exceptions import OrientationError
from app.mc_engine import constants
from app.mc_engine.exceptions import EmptySampleError, MissingBurnInError, UnstableChainError
from app.mc_engine.paths import PathBatch, simulate_block
from app.mc_engine.samplers import (
    Sampler,
    exponential_sampler,
    increment_sampler,
    residual_sum_sampler,
    running_max_sampler,
    zero_sampler,
)
from app.mc_engine.schemas import EmpiricalSample, Estimate, SimConfig
from app.mc_engine.streams import derive_generator
from app.mc_engine.tasks import run_blocks
from app.transforms import InspectionScheme
from app.transforms.exceptions import NonPositiveRateError

logger = logging.getLogger(__name__)


def _lindley_counted(
    interarrival: Sampler, service: Sampler, stop_probability: float, rng, size: int
) -> np.ndarray:
    """W_N of independent chains, N shifted-geometric with parameter stop_probability."""
    counts = rng.geometric(stop_probability, size) - 1
    total = int(counts.sum())
    waits = np.zeros(size)
    if total == 0:
        return waits
    steps = service(rng, total) - interarrival(rng, total)
    active = counts > 0
    ends = np.cumsum(counts)[active]
    starts = ends - counts[active]
    level = np.cumsum(steps)
    level = level - np.repeat(level[starts] - steps[starts], counts[active])
    lowest = np.minimum(np.minimum.reduceat(level, starts), 0.0)
    waits[active] = level[ends - 1] - lowest
    return waits


def _lindley_stationary(
    interarrival: Sampler, service: Sampler, burn_in: int, stride: int, rng, size: int
) -> np.ndarray:
    """Every stride-th waiting time of one chain after burn_in customers."""
    length = burn_in + stride * size
    level = np.cumsum(service(rng, length) - interarrival(rng, length))
    waits = level - np.minimum(np.minimum.accumulate(level), 0.0)
    return waits[burn_in + stride * np.arange(1, size + 1) - 1]


class SimulationService:
    """Seeded samplers; every sample is reproducible from (seed, stream)."""

    @staticmethod
    def _collect(
        job: Callable, cfg: SimConfig, stream: int, quantity: str, steady_state: bool = False
    ) -> EmpiricalSample:
        blocks = run_blocks(job, cfg.paths, cfg, stream)
        counts = None
        if isinstance(blocks[0], tuple):
            counts = np.concatenate([b[1] for b in blocks])
            blocks = [b[0] for b in blocks]
        return EmpiricalSample(
            values=np.concatenate(blocks),
            quantity=quantity,
            master_seed=cfg.seed,
            stream_id=stream,
            batches=len(blocks),
            steady_state=steady_state,
            inspection_counts=counts,
        )

    @staticmethod
    def sample_running_max_killed(
        model: LevyModel, zeta: float, cfg: SimConfig, stream: int = constants.STREAM_RUNNING_MAX
    ) -> EmpiricalSample:
        """Draws of Ȳ(T_ζ), T_ζ ~ exp(ζ)."""
        if not zeta > 0:
            raise NonPositiveRateError("zeta", zeta)

        return SimulationService._collect(running_max_sampler(model, zeta), cfg, stream, "running_max")

    @staticmethod
    def sample_inspected_max(
        model: LevyModel,
        scheme: InspectionScheme,
        cfg: SimConfig,
        stream: int = constants.STREAM_INSPECTED,
        root_cfg: RootSolveConfig | None = None,
    ) -> EmpiricalSample:
        """
        Draws of Y_{β,ω}, the maximum of 0 and Y at the inspection epochs before T_β.

        With β = 0 the steady-state law is sampled by a Lindley chain on the
        increments of Y between inspections; this needs cfg.burn_in.
        """
        if scheme.beta == 0:
            LevyModelService.require_finite_supremum(model)
            load = SimulationService.stationary_load(model, scheme, root_cfg)
            return SimulationService.lindley_chain(
                zero_sampler(),
                increment_sampler(model, scheme.phase_rate, scheme.k),
                None,
                cfg,
                stream=stream,
                load=load,
                quantity="inspected_max",
            )

        def job(rng, size):
            batch = simulate_block(model, scheme.beta, scheme.phase_rate, rng, size, scheme.k)
            return batch.inspected_max, batch.inspection_counts

        return SimulationService._collect(job, cfg, stream, "inspected_max")

    @staticmethod
    def sample_inspected_max_pair(
        model: LevyModel,
        beta: float,
        omega_low: float,
        omega_high: float,
        cfg: SimConfig,
        stream: int = constants.STREAM_PAIR,
    ) -> tuple[EmpiricalSample, EmpiricalSample]:
        """
        Coupled draws at two Poisson inspection rates on common paths.

        Inspections at rate ω_high are thinned with probability ω_low/ω_high, so the
        low-rate inspection set is contained in the high-rate one.
        """
        if not 0 < omega_low <= omega_high:
            raise NonPositiveRateError("omega_low", omega_low)
        if not beta > 0:
            raise NonPositiveRateError("beta", beta)

        def job(rng, size):
            batch = simulate_block(model, beta, omega_high, rng, size)
            keep = rng.random(batch.y_post.size) < omega_low / omega_high
            return np.stack([batch.thinned_inspected_max(keep), batch.inspected_max])

        blocks = run_blocks(job, cfg.paths, cfg, stream)
        low, high = np.concatenate(blocks, axis=1)

        def make(values: np.ndarray, name: str) -> EmpiricalSample:
            return EmpiricalSample(
                values=values,
                quantity=name,
                master_seed=cfg.seed,
                stream_id=stream,
                batches=len(blocks),
            )

        return make(low, "inspected_max_low"), make(high, "inspected_max_high")

    @staticmethod
    def sample_inspected_max_dual(
        model: LevyModel,
        beta: float,
        omega: float,
        cfg: SimConfig,
        stream: int = constants.STREAM_LINDLEY,
        root_cfg: RootSolveConfig | None = None,
    ) -> EmpiricalSample:
        """
        Draws of Y_{β,ω} as the waiting time W_N of a Lindley chain.

        Service times are Z⁺ ~ Ȳ(T_{β+ω}), inter-arrival times Z⁻ ~ exp(ψ(β+ω))
        and N is shifted-geometric with stop probability β/(β+ω). The draws are
        independent of the path-based sampler.
        """
        if not model.is_spectrally_positive:
            raise OrientationError(
                "sample_inspected_max_dual", model.orientation.value, "spectrally positive"
            )
        if not beta > 0:
            raise NonPositiveRateError("beta", beta)
        if not omega > 0:
            raise NonPositiveRateError("omega", omega)
        zeta = beta + omega
        psi = LevyModelService.exponent_inverse(model, zeta, root_cfg or RootSolveConfig())
        return SimulationService.lindley_chain(
            exponential_sampler(psi),
            running_max_sampler(model, zeta),
            beta / zeta,
            cfg,
            stream=stream,
            quantity="inspected_max_dual",
        )

    @staticmethod
    def sample_paths(
        model: LevyModel, scheme: InspectionScheme, size: int, seed: int, block: int = 0
    ) -> PathBatch:
        """One block of full event paths, for path-level diagnostics."""
        rng = derive_generator(seed, constants.STREAM_INSPECTED, block)
        return simulate_block(model, scheme.beta, scheme.phase_rate, rng, size, scheme.k)

    @staticmethod
    def sample_all_time_max(
        model: LevyModel, cfg: SimConfig, stream: int = constants.STREAM_ALL_TIME_MAX
    ) -> EmpiricalSample:
        """Pollaczek-Khinchine draws of sup_t Y(t) for spectrally positive compound-Poisson models."""
        if not (model.is_spectrally_positive and model.is_compound_poisson):
            raise OrientationError(
                "sample_all_time_max", model.orientation.value, "spectrally positive"
            )
        LevyModelService.require_finite_supremum(model)
        load = 1 - LevyModelService.safety_loading(model) / model.premium_rate
        sampler = residual_sum_sampler(model, load)
        return SimulationService._collect(sampler, cfg, stream, "all_time_max")

    @staticmethod
    def sample_increments(
        model: LevyModel,
        phase_rate: float,
        k: int,
        cfg: SimConfig,
        stream: int = constants.STREAM_INCREMENTS,
    ) -> EmpiricalSample:
        """Draws of Y(τ), τ ~ Erlang(k, phase_rate)."""
        if not phase_rate > 0:
            raise NonPositiveRateError("phase_rate", phase_rate)
        return SimulationService._collect(
            increment_sampler(model, phase_rate, k), cfg, stream, "increment"
        )

    @staticmethod
    def stationary_load(
        model: LevyModel, scheme: InspectionScheme, root_cfg: RootSolveConfig | None = None
    ) -> float:
        """ρ = E Z⁺ / E Z⁻ of the β = 0 inspection chain."""
        root_cfg = root_cfg or RootSolveConfig()
        zeta = scheme.phase_rate
        psi = LevyModelService.exponent_inverse(model, zeta, root_cfg)
        loading = LevyModelService.safety_loading(model)
        if model.is_spectrally_positive:
            mean_level = -loading
            mean_max = 1 / psi - loading / zeta
        else:
            mean_level = loading
            mean_max = 1 / psi
        mean_fall = mean_max - mean_level / zeta
        return mean_max / mean_fall

    @staticmethod
    def lindley_chain(
        interarrival: Sampler,
        service: Sampler,
        stop_probability: float | None,
        cfg: SimConfig,
        stream: int = constants.STREAM_LINDLEY,
        load: float | None = None,
        quantity: str = "waiting_time",
    ) -> EmpiricalSample:
        """
        Waiting times of W_{m+1} = max(0, W_m + service - interarrival), W_0 = 0.

        With a stop probability p the customer index is shifted-geometric,
        P(N = n) = (1-p)^n p, and W_N is returned. Without one (β = 0) a stationary
        chain per block is run with burn-in and thinning set by the load.
        """
        if stop_probability is not None:

            def job(rng, size):
                return _lindley_counted(interarrival, service, stop_probability, rng, size)

            return SimulationService._collect(job, cfg, stream, quantity)

        if cfg.burn_in is None:
            raise MissingBurnInError()
        if load is None:
            pilot = derive_generator(cfg.seed, constants.STREAM_PILOT)
            mean_service = float(np.mean(service(pilot, constants.PILOT_SIZE)))
            mean_arrival = float(np.mean(interarrival(pilot, constants.PILOT_SIZE)))
            load = mean_service / mean_arrival if mean_arrival > 0 else math.inf
        if not load < 1:
            raise UnstableChainError(load)
        stride = max(1, math.ceil(1 / (1 - load)))
        if cfg.burn_in == "auto":
            burn_in = math.ceil(constants.BURN_IN_FACTOR / (1 - load))
        else:
            burn_in = cfg.burn_in
        logger.debug(f"Stationary chain: load={load:.6g} burn_in={burn_in} stride={stride}")

        def stationary_job(rng, size):
            return _lindley_stationary(interarrival, service, burn_in, stride, rng, size)

        return SimulationService._collect(stationary_job, cfg, stream, quantity, steady_state=True)

    @staticmethod
    def write_sample_csv(sample: EmpiricalSample, path: Path, header: str) -> Path:
        """Single-column export named after the sampled quantity."""
        provenance = f"{header} quantity={sample.quantity} stream={sample.stream_id} n={sample.size}"
        return write_csv(path, provenance, [sample.quantity], ([v] for v in sample.values))


class SampleStatistics:
    """Estimates with standard errors from empirical samples."""

    @staticmethod
    def _estimate(sample: EmpiricalSample, draws: np.ndarray) -> Estimate:
        n = draws.size
        if n == 0:
            raise EmptySampleError()
        value = float(np.mean(draws))
        stderr = float(np.std(draws, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        if sample.steady_state and sample.batches > 1:
            means = [chunk.mean() for chunk in np.array_split(draws, sample.batches)]
            stderr = max(stderr, float(np.std(means, ddof=1) / math.sqrt(sample.batches)))
        return Estimate(value=value, stderr=stderr)

    @staticmethod
    def empirical_lst(sample: EmpiricalSample, alpha: float) -> Estimate:
        """Mean of e^{-α X} with its standard error."""
        if alpha < 0:
            raise DomainError(constants.NEGATIVE_ALPHA_ERROR.format(alpha=alpha))
        if alpha == 0:
            return Estimate(value=1.0, stderr=0.0)
        return SampleStatistics._estimate(sample, np.exp(-alpha * sample.values))

    @staticmethod
    def empirical_ccdf(sample: EmpiricalSample, u: float) -> Estimate:
        """Fraction of draws above u."""
        return SampleStatistics._estimate(sample, (sample.values > u).astype(float))

    @staticmethod
    def atom_mass(sample: EmpiricalSample) -> Estimate:
        """Fraction of draws exactly equal to zero."""
        return SampleStatistics._estimate(sample, (sample.values == 0).astype(float))

    @staticmethod
    def empirical_cf(values: np.ndarray, frequency: float) -> tuple[complex, float]:
        """Empirical characteristic function and the standard error of its real-imaginary mean."""
        draws = np.exp(1j * frequency * values)
        value = complex(np.mean(draws))
        n = draws.size
        if n < 2:
            return value, 0.0
        spread = np.var(draws.real, ddof=1) + np.var(draws.imag, ddof=1)
        return value, float(math.sqrt(spread / n))
