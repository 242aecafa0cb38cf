"""Statistical checks of the maximum decomposition and its consequences."""

import logging
import math

import numpy as np
from scipy import stats

from app.core.config import settings
from app.levy_models import LevyModel, LevyModelService, RootSolveConfig
from app.levy_models.exceptions import OrientationError
from app.mc_engine import constants
from app.mc_engine.paths import simulate_block
from app.mc_engine.samplers import residual_sum_sampler
from app.mc_engine.schemas import EmpiricalSample, IdentityRow, KsResult, MinMaxResult, SimConfig
from app.mc_engine.service import SampleStatistics, SimulationService
from app.mc_engine.tasks import run_blocks
from app.transforms import InspectionScheme

logger = logging.getLogger(__name__)


def ks_critical_value(n_a: int, n_b: int, level: float) -> float:
    """Asymptotic two-sample Kolmogorov-Smirnov critical value."""
    return math.sqrt(-math.log(level / 2) / 2) * math.sqrt((n_a + n_b) / (n_a * n_b))


class VerificationService:
    """Monte-Carlo checks; each returns its verdict instead of raising."""

    @staticmethod
    def ks_decomposition_test(
        model: LevyModel, beta: float, omega: float, cfg: SimConfig, level: float | None = None
    ) -> KsResult:
        """
        Two-sample KS test of Ȳ(T_β) against Y_{β,ω} + Ȳ(T_{β+ω}).

        The three samples come from independent streams.
        """
        level = level or settings.KS_LEVEL
        whole = SimulationService.sample_running_max_killed(model, beta, cfg)
        inspected = SimulationService.sample_inspected_max(
            model, InspectionScheme.poisson(beta, omega), cfg
        )
        tail = SimulationService.sample_running_max_killed(
            model, beta + omega, cfg, stream=constants.STREAM_RUNNING_MAX_TAIL
        )
        combined = inspected.values + tail.values
        statistic = float(stats.ks_2samp(whole.values, combined).statistic)
        critical = ks_critical_value(whole.size, combined.size, level)
        passed = statistic < critical
        logger.info(f"KS decomposition: D={statistic:.6g} critical={critical:.6g} passed={passed}")
        return KsResult(statistic=statistic, critical_value=critical, level=level, passed=passed)

    @staticmethod
    def minmax_sum_check(
        model: LevyModel,
        beta: float,
        omega: float,
        frequencies: list[float],
        cfg: SimConfig,
        z: float | None = None,
    ) -> MinMaxResult:
        """
        Compare the characteristic function of S_N with the product of those of
        max_{n<=N} S_n and min_{n<=N} S_n, each from independent replications.
        """
        z = z or settings.STAT_Z_THRESHOLD

        def extract(attribute: str, stream: int) -> np.ndarray:
            def job(rng, size):
                return getattr(simulate_block(model, beta, omega, rng, size), attribute)

            return np.concatenate(run_blocks(job, cfg.paths, cfg, stream))

        sums = extract("inspected_last", constants.STREAM_MINMAX_SUM)
        maxima = extract("inspected_max", constants.STREAM_MINMAX_MAX)
        minima = extract("inspected_min", constants.STREAM_MINMAX_MIN)

        deviations, stderrs, passed = [], [], True
        for frequency in frequencies:
            cf_sum, se_sum = SampleStatistics.empirical_cf(sums, frequency)
            cf_max, se_max = SampleStatistics.empirical_cf(maxima, frequency)
            cf_min, se_min = SampleStatistics.empirical_cf(minima, frequency)
            deviation = abs(cf_sum - cf_max * cf_min)
            stderr = math.sqrt(se_sum**2 + abs(cf_min) ** 2 * se_max**2 + abs(cf_max) ** 2 * se_min**2)
            deviations.append(deviation)
            stderrs.append(stderr)
            passed &= deviation <= z * stderr + 1e-12
        max_deviation = max(deviations, default=0.0)
        logger.info(f"Min/max sum: max deviation={max_deviation:.6g} passed={passed}")
        return MinMaxResult(
            frequencies=list(frequencies),
            deviations=deviations,
            stderrs=stderrs,
            max_deviation=max_deviation,
            passed=passed,
        )

    @staticmethod
    def _difference_sample(
        model: LevyModel, fall_rate: float, cfg: SimConfig
    ) -> EmpiricalSample:
        """Draws of sup_t Y(t) - Z, Z ~ exp(fall_rate) independent."""
        load = 1 - LevyModelService.safety_loading(model) / model.premium_rate
        supremum = residual_sum_sampler(model, load)

        def job(rng, size):
            return supremum(rng, size) - rng.exponential(1 / fall_rate, size)

        blocks = run_blocks(job, cfg.paths, cfg, constants.STREAM_DIFFERENCE)
        return EmpiricalSample(
            values=np.concatenate(blocks),
            quantity="all_time_max_minus_fall",
            master_seed=cfg.seed,
            stream_id=constants.STREAM_DIFFERENCE,
            batches=len(blocks),
        )

    @staticmethod
    def bankruptcy_identity_check(
        model: LevyModel,
        omega: float,
        u_values: list[float],
        cfg: SimConfig,
        root_cfg: RootSolveConfig | None = None,
        z: float | None = None,
    ) -> list[IdentityRow]:
        """
        Check p̃(u) = E p(u + Z⁻), Z⁻ ~ exp(ψ(ω)), at every u.

        p̃ is estimated from the steady-state inspected maximum. For exponential
        claims the right side is closed form; otherwise it is estimated from
        Pollaczek-Khinchine draws of the all-time maximum.
        """
        if not (model.is_spectrally_positive and model.is_compound_poisson):
            raise OrientationError(
                "bankruptcy_identity_check", model.orientation.value, "spectrally positive"
            )
        LevyModelService.require_finite_supremum(model)
        root_cfg = root_cfg or RootSolveConfig()
        z = z or settings.STAT_Z_THRESHOLD
        psi = LevyModelService.exponent_inverse(model, omega, root_cfg)
        bankruptcy = SimulationService.sample_inspected_max(
            model, InspectionScheme.poisson(0.0, omega), cfg, root_cfg=root_cfg
        )

        exponential = model.claims.kind == "exponential"
        difference = None if exponential else VerificationService._difference_sample(model, psi, cfg)
        rows = []
        for u in u_values:
            lhs = SampleStatistics.empirical_ccdf(bankruptcy, u)
            if exponential:
                mu, lam, r = model.claims.rate, model.arrival_rate, model.premium_rate
                theta = mu - lam / r
                rhs_value = lam / (r * mu) * math.exp(-theta * u) * psi / (psi + theta)
                rhs_stderr = 0.0
            else:
                rhs = SampleStatistics.empirical_ccdf(difference, u)
                rhs_value, rhs_stderr = rhs.value, rhs.stderr
            stderr = math.hypot(lhs.stderr, rhs_stderr)
            passed = abs(lhs.value - rhs_value) <= z * stderr + 1e-12
            rows.append(
                IdentityRow(u=u, lhs=lhs.value, rhs=rhs_value, stderr=stderr, passed=passed)
            )
        logger.info(f"Bankruptcy identity: {sum(r.passed for r in rows)}/{len(rows)} points pass")
        return rows
