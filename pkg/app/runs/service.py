"""Dispatch of a run configuration to the domain services."""

import logging
import math
from collections.abc import Callable
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from app.common.output import config_digest, header_line, write_csv, write_json
from app.core.config import settings
from app.core.exceptions import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    DomainError,
    ToolkitError,
    UnsupportedMomentError,
)
from app.inversion import InversionService
from app.levy_models import JumpLawService, LevyModelService
from app.mc_engine import SampleStatistics, SimConfig, SimulationService, VerificationService
from app.risk_analytics import RiskService
from app.runs import constants
from app.runs.exceptions import ConfigFileError, ConfigValidationError
from app.runs.schemas import Command, RunConfig, RunOutcome, TransformTarget
from app.transforms import InspectionScheme, TransformService

logger = logging.getLogger(__name__)


def _z_score(value: float, reference: float, stderr: float) -> float:
    if stderr > 0:
        return (value - reference) / stderr
    return 0.0 if math.isclose(value, reference, rel_tol=0, abs_tol=1e-12) else math.inf


def _skipped(reason: str) -> dict:
    return {"passed": True, "skipped": True, "reason": reason}


class _Run:
    """Per-invocation state shared by the command handlers."""

    def __init__(self, config: RunConfig, digest: str, out: Path, threads: int | None):
        self.config = config
        self.out = out
        self.header = header_line(digest, config.seed)
        self.files: list[Path] = []
        self.sim: SimConfig | None = config.simulation
        if self.sim is not None and threads is not None:
            self.sim = self.sim.model_copy(update={"threads": threads})

    def path(self, suffix: str) -> Path:
        return self.out / f"{self.config.command.file_stem}_{suffix}"

    def csv(self, suffix: str, columns: list[str], rows) -> None:
        self.files.append(write_csv(self.path(f"{suffix}.csv"), self.header, columns, rows))

    def report(self, passed: bool, payload: dict) -> bool:
        document = {
            "command": self.config.command.value,
            "version": settings.APP_VERSION,
            "passed": passed,
            "files": [p.name for p in self.files],
            **payload,
        }
        self.files.append(write_json(self.path("report.json"), self.header, document))
        return passed


class RunService:
    """Load, validate and execute run configurations."""

    @staticmethod
    def load(text: str) -> RunConfig:
        """Parse and validate a JSON configuration document."""
        try:
            return RunConfig.model_validate_json(text)
        except ValidationError as exc:
            raise ConfigValidationError(exc) from None

    @staticmethod
    def read(path: Path) -> str:
        try:
            return path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigFileError(
                constants.CONFIG_READ_ERROR.format(path=path, reason=exc.strerror)
            ) from exc

    @staticmethod
    def execute(config_path: Path, out: Path | None = None, threads: int | None = None) -> RunOutcome:
        """
        Run a configuration file and map failures to exit codes.

        Check failures give exit 1 with the report written; toolkit errors give the
        exit code of their family (2 configuration, 3 regime, 4 non-convergence).
        """
        try:
            text = RunService.read(config_path)
            config = RunService.load(text)
            target = out or Path(config.output_dir or settings.OUTPUT_DIR)
            return RunService.run(config, config_digest(text), target, threads)
        except ToolkitError as exc:
            logger.error(exc.detail)
            return RunOutcome(exit_code=exc.exit_code, passed=False, message=exc.detail)

    @staticmethod
    def run(config: RunConfig, digest: str, out: Path, threads: int | None = None) -> RunOutcome:
        """
        Execute one validated configuration; raises toolkit errors.

        Schemas built from configuration values inside a handler report their
        violations as configuration errors.
        """
        logger.info(f"Running {config.command.value}")
        run = _Run(config, digest, out, threads)
        handler = {
            Command.EVAL_TRANSFORM: RunService._eval_transform,
            Command.INVERT: RunService._invert,
            Command.SIMULATE: RunService._simulate,
            Command.VERIFY: RunService._verify,
            Command.RISK: RunService._risk,
            Command.RULE_OF_THUMB: RunService._rule_of_thumb,
        }[config.command]
        try:
            passed = handler(run)
        except ValidationError as exc:
            raise ConfigValidationError(exc) from None
        logger.info(f"Finished {config.command.value}: passed={passed}")
        return RunOutcome(
            exit_code=EXIT_OK if passed else EXIT_CHECK_FAILED, passed=passed, files=run.files
        )

    @staticmethod
    def _evaluator(config: RunConfig) -> Callable:
        model, scheme, root = config.model, config.scheme, config.root
        target = config.transform

        def evaluate(alpha):
            if target is TransformTarget.ALL_TIME_MAX:
                return TransformService.lst_all_time_max(model, alpha, root)
            if target is TransformTarget.RUNNING_MAX:
                return TransformService.lst_running_max(model, scheme.beta, alpha, root)
            if target is TransformTarget.INSPECTED_MAX:
                return TransformService.lst_inspected_max(model, scheme, alpha, root)
            plus, rate = TransformService.erlang_component_lsts(
                model, scheme.beta, scheme.omega, scheme.k, alpha, root
            )
            if target is TransformTarget.INCREMENT_PLUS:
                return plus
            return rate / (rate + np.asarray(alpha))

        return evaluate

    @staticmethod
    def _eval_transform(run: _Run) -> bool:
        config = run.config
        curve = TransformService.lst_curve(RunService._evaluator(config), config.grids.alpha)
        run.csv("lst", ["alpha", "value"], curve.rows())
        payload: dict = {"transform": config.transform.value}
        scheme = config.scheme
        if config.transform is TransformTarget.INSPECTED_MAX and scheme.beta > 0:
            try:
                mean, variance = TransformService.inspected_max_moments(
                    config.model, scheme.beta, scheme.omega, config.root
                )
            except UnsupportedMomentError as exc:
                mean, variance = exc.mean, None
            payload["moments"] = {"mean": mean, "variance": variance}
            if not config.model.is_spectrally_positive:
                payload["atom"] = TransformService.sn_atom(
                    config.model, scheme.beta, scheme.omega, config.root
                )
        return run.report(True, payload)

    @staticmethod
    def _invert(run: _Run) -> bool:
        config = run.config
        curve = InversionService.inspected_max_curve(
            config.model, config.scheme, config.grids.u, config.inversion
        )
        run.csv("ccdf", ["u", "ccdf"], zip(curve.u, curve.ccdf, strict=True))
        return run.report(
            True,
            {
                "method": config.inversion.method.value,
                "max_clip_deviation": curve.max_clip_deviation,
                "monotone_adjustment": curve.monotone_adjustment,
                "heavy_tail_warning": curve.heavy_tail_warning,
            },
        )

    @staticmethod
    def _simulate(run: _Run) -> bool:
        config, sim = run.config, run.sim
        model, scheme = config.model, config.scheme
        if scheme.beta > 0:
            running = SimulationService.sample_running_max_killed(model, scheme.beta, sim)
            run.files.append(
                SimulationService.write_sample_csv(
                    running, run.path("running_max.csv"), run.header
                )
            )
        inspected = SimulationService.sample_inspected_max(model, scheme, sim, root_cfg=config.root)
        run.files.append(
            SimulationService.write_sample_csv(inspected, run.path("inspected_max.csv"), run.header)
        )

        closed = None
        if scheme.kind == "poisson":
            closed = np.atleast_1d(
                TransformService.lst_inspected_max(
                    model, scheme, np.asarray(config.grids.alpha), config.root
                )
            )
        rows, passed = [], True
        for i, alpha in enumerate(config.grids.alpha):
            estimate = SampleStatistics.empirical_lst(inspected, alpha)
            reference = None if closed is None else float(closed[i])
            z = None
            if reference is not None:
                z = _z_score(estimate.value, reference, estimate.stderr)
                passed &= abs(z) <= settings.STAT_Z_THRESHOLD
            rows.append([alpha, estimate.value, estimate.stderr, reference, z])
        run.csv("comparison", ["alpha", "empirical", "stderr", "closed_form", "z"], rows)
        return run.report(bool(passed), {"paths": sim.paths, "z_threshold": settings.STAT_Z_THRESHOLD})

    @staticmethod
    def _verify(run: _Run) -> bool:
        config, sim, root = run.config, run.sim, run.config.root
        model, scheme = config.model, config.scheme
        beta, omega = scheme.beta, scheme.omega
        z = settings.STAT_Z_THRESHOLD
        checks: dict[str, dict] = {}

        residual = TransformService.factorization_residual(model, beta, omega, config.grids.alpha, root)
        checks["factorization_residual"] = {
            "passed": residual <= constants.FACTORIZATION_TOLERANCE,
            "residual": residual,
            "tolerance": constants.FACTORIZATION_TOLERANCE,
        }

        if beta > 0:
            checks["ks_decomposition"] = VerificationService.ks_decomposition_test(
                model, beta, omega, sim
            ).model_dump()
            checks["minmax_sum"] = VerificationService.minmax_sum_check(
                model, beta, omega, config.grids.frequencies, sim
            ).model_dump()
            checks["exponent_integral"] = RunService._exponent_check(run, z)
        else:
            for name in ("ks_decomposition", "minmax_sum", "exponent_integral"):
                checks[name] = _skipped(constants.SKIP_NO_KILLING)

        if (
            model.is_spectrally_positive
            and model.is_compound_poisson
            and LevyModelService.has_finite_supremum(model)
        ):
            u_values = config.grids.u or list(constants.DEFAULT_IDENTITY_U)
            rows = VerificationService.bankruptcy_identity_check(model, omega, u_values, sim, root)
            checks["bankruptcy_identity"] = {
                "passed": all(r.passed for r in rows),
                "rows": [r.model_dump() for r in rows],
            }
        else:
            checks["bankruptcy_identity"] = _skipped(constants.SKIP_NOT_CRAMER_LUNDBERG)

        if scheme.kind != "erlang":
            checks["erlang_counts"] = _skipped(constants.SKIP_NOT_ERLANG)
        elif beta == 0:
            checks["erlang_counts"] = _skipped(constants.SKIP_NO_KILLING)
        else:
            checks["erlang_counts"] = RunService._count_check(run, z)

        passed = all(bool(entry["passed"]) for entry in checks.values())
        for name, entry in checks.items():
            logger.info(f"Check {name}: passed={entry['passed']}")
        return run.report(passed, {"checks": checks})

    @staticmethod
    def _exponent_check(run: _Run, z: float) -> dict:
        config, sim = run.config, run.sim
        beta, omega = config.scheme.beta, config.scheme.omega
        alpha = config.exponent_alpha
        estimate = InversionService.inspected_exponent_estimate(
            config.model, beta, omega, alpha, sim.seed, config.exponent, sim.threads
        )
        closed = -math.log(
            TransformService.lst_inspected_max(
                config.model, InspectionScheme.poisson(beta, omega), alpha, config.root
            )
        )
        deviation = abs(estimate.estimate - closed)
        return {
            **estimate.model_dump(),
            "alpha": alpha,
            "closed_form": closed,
            "passed": deviation <= z * estimate.stderr + 1e-12,
        }

    @staticmethod
    def _count_check(run: _Run, z: float) -> dict:
        config, sim = run.config, run.sim
        scheme = config.scheme
        sample = SimulationService.sample_inspected_max(config.model, scheme, sim)
        counts = sample.inspection_counts
        n = np.arange(constants.COUNT_CHECK_MAX + 1)
        expected = np.atleast_1d(
            TransformService.erlang_count_pmf(scheme.beta, scheme.omega, scheme.k, n)
        )
        observed = np.array([np.mean(counts == m) for m in n])
        stderr = np.sqrt(expected * (1 - expected) / counts.size)
        passed = bool(np.all(np.abs(observed - expected) <= z * stderr + 1e-12))
        return {
            "passed": passed,
            "counts": n.tolist(),
            "observed": observed.tolist(),
            "expected": expected.tolist(),
            "stderr": stderr.tolist(),
        }

    @staticmethod
    def _risk(run: _Run) -> bool:
        config, root = run.config, run.config.root
        model, omega, u = config.model, config.scheme.omega, config.grids.u

        ruin = RiskService.ruin_curve(model, u, config.inversion, root)
        exact = [None] * len(u)
        if model.claims.kind == "exponential":
            exact = np.atleast_1d(RiskService.ruin_exact_exponential(model, np.asarray(u))).tolist()
        run.csv(
            "ruin",
            ["u", "value", "exact", "asymptote", "ratio"],
            ([r.u, r.value, e, r.asymptote, r.ratio] for r, e in zip(ruin, exact, strict=True)),
        )

        bankruptcy = RiskService.bankruptcy_curve(model, omega, u, config.inversion, root)
        run.csv(
            "bankruptcy",
            ["u", "value", "asymptote", "ratio", "ratio_to_ruin"],
            (
                [b.u, b.value, b.asymptote, b.ratio, b.value / r.value if r.value > 0 else None]
                for b, r in zip(bankruptcy, ruin, strict=True)
            ),
        )

        payload: dict = {"omega": omega}
        if JumpLawService.is_heavy_tailed(model.claims):
            _, report = RiskService.bankruptcy_asymptote_heavy(model, 0.0)
        else:
            _, report = RiskService.bankruptcy_asymptote_light(model, omega, 0.0, root)
            payload["information_loss"] = RiskService.information_loss(model, omega, root)
            try:
                payload["decay_slope"] = RiskService.decay_slope(
                    bankruptcy, u[len(u) // 2], u[-1]
                )
            except DomainError:
                payload["decay_slope"] = None
        payload["asymptote"] = report.model_dump(mode="json")
        return run.report(True, payload)

    @staticmethod
    def _rule_of_thumb(run: _Run) -> bool:
        config = run.config
        rows = [
            RiskService.rule_of_thumb_rate(config.model, epsilon, config.root)
            for epsilon in config.grids.epsilon
        ]
        columns = ["epsilon", "omega_min", "omega_exact", "omega_exact_solved", "limit"]
        run.csv("rates", columns, ([getattr(r, c) for c in columns] for r in rows))
        payload: dict = {"limit": rows[0].limit}
        if config.scheme is not None:
            payload["information_loss"] = RiskService.information_loss(
                config.model, config.scheme.omega, config.root
            )
        return run.report(True, payload)
