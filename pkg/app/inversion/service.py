"""Numerical inversion of transforms to tail curves."""

import logging
import math
from collections.abc import Callable

import numpy as np
from scipy.special import comb, factorial

from app.inversion import constants
from app.inversion.exceptions import NoKillingError, RealOnlyEvaluatorError
from app.inversion.schemas import (
    ExponentEstimate,
    ExponentQuadratureConfig,
    InversionConfig,
    InversionMethod,
    TailCurve,
)
from app.levy_models import LevyModel
from app.mc_engine import derive_generator, sample_levels
from app.mc_engine.tasks import map_ordered
from app.transforms import InspectionScheme, TransformService

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]


def stehfest_weights(order: int) -> np.ndarray:
    """Salzer summation weights V_1..V_order of the Gaver-Stehfest formula."""
    half = order // 2
    weights = np.zeros(order)
    for k in range(1, order + 1):
        terms = [
            j**half
            * factorial(2 * j)
            / (
                factorial(half - j)
                * factorial(j)
                * factorial(j - 1)
                * factorial(k - j)
                * factorial(2 * j - k)
            )
            for j in range((k + 1) // 2, min(k, half) + 1)
        ]
        weights[k - 1] = (-1) ** (k + half) * math.fsum(terms)
    return weights


class InversionService:
    """Tail curves from transforms, and the integral form of the inspected exponent."""

    @staticmethod
    def _ccdf_transform(transform: Evaluator, damping: float) -> Evaluator:
        """s ↦ ∫ e^{-su} e^{cu} P(X > u) du = (1 - L(s - c)) / (s - c)."""

        def evaluate(s: np.ndarray) -> np.ndarray:
            alpha = np.asarray(s) - damping
            near = np.abs(alpha) < constants.ORIGIN_GUARD
            safe = np.where(near, 1.0, alpha)
            values = (1 - np.asarray(transform(safe))) / safe
            if np.any(near):
                h = constants.ORIGIN_STEP
                mean = (np.asarray(transform(-h)) - np.asarray(transform(h))) / (2 * h)
                values = np.where(near, mean, values)
            return values

        return evaluate

    @staticmethod
    def _euler(ccdf_transform: Evaluator, u: np.ndarray, cfg: InversionConfig) -> np.ndarray:
        """Fourier-series inversion with Euler summation of the alternating tail."""
        shift = -math.log(cfg.target_accuracy)
        n, m = cfg.euler_terms, cfg.euler_binomial_terms
        k = np.arange(n + m + 1)
        s = (shift + 2j * math.pi * k[None, :]) / (2 * u[:, None])
        values = np.real(np.asarray(ccdf_transform(s)))
        signs = np.where(k % 2 == 0, 1.0, -1.0)
        signs[0] = 0.5
        terms = signs[None, :] * values
        partial = np.cumsum(terms, axis=1)[:, n:]
        binomial = comb(m, np.arange(m + 1)) / 2.0**m
        return math.exp(shift / 2) / u * (partial @ binomial)

    @staticmethod
    def _stehfest(ccdf_transform: Evaluator, u: np.ndarray, cfg: InversionConfig) -> np.ndarray:
        """Gaver-Stehfest inversion along the real axis."""
        weights = stehfest_weights(cfg.stehfest_order)
        k = np.arange(1, cfg.stehfest_order + 1)
        s = math.log(2) * k[None, :] / u[:, None]
        values = np.real(np.asarray(ccdf_transform(s)))
        return math.log(2) / u * (values @ weights)

    @staticmethod
    def _check_complex(transform: Evaluator) -> None:
        try:
            checked = np.asarray(transform(np.asarray([constants.COMPLEX_CHECK_POINT])))
        except (TypeError, ValueError) as exc:
            raise RealOnlyEvaluatorError(str(exc)) from exc
        if not np.iscomplexobj(checked) or not np.all(np.isfinite(checked)):
            raise RealOnlyEvaluatorError("evaluator returned a real or non-finite value")

    @staticmethod
    def invert_ccdf(
        transform: Evaluator,
        u_grid,
        cfg: InversionConfig | None = None,
        heavy_tailed: bool = False,
    ) -> TailCurve:
        """
        P(X > u) on the grid from the transform α ↦ E e^{-αX}.

        Inverts (1 - L(s))/s, the ordinary Laplace transform of the ccdf.
        ccdf(0) is taken as 1 - L(α_∞). Results are clipped to [0, 1] and made
        nonincreasing; the corrections are recorded on the curve.
        """
        cfg = cfg or InversionConfig()
        u = np.asarray(u_grid, dtype=float)
        if cfg.method is InversionMethod.EULER:
            InversionService._check_complex(transform)
        if heavy_tailed:
            logger.warning("Inverting a heavy-tailed transform: deep-tail values are unreliable")

        raw = np.empty_like(u)
        at_origin = u == 0
        if np.any(at_origin):
            raw[at_origin] = 1 - float(np.real(transform(constants.ALPHA_AT_INFINITY)))
        positive = ~at_origin
        if np.any(positive):
            up = u[positive]
            ccdf_transform = InversionService._ccdf_transform(transform, cfg.damping)
            if cfg.method is InversionMethod.EULER:
                damped = InversionService._euler(ccdf_transform, up, cfg)
            else:
                damped = InversionService._stehfest(ccdf_transform, up, cfg)
            raw[positive] = damped * np.exp(-cfg.damping * up)

        clipped = np.clip(raw, 0.0, 1.0)
        clip_deviation = float(np.max(np.abs(raw - clipped)))
        monotone = np.minimum.accumulate(clipped)
        adjustment = float(np.max(clipped - monotone))
        if clip_deviation > cfg.target_accuracy:
            logger.warning(f"Inverted ccdf left [0, 1] by {clip_deviation:.3g} before clipping")
        return TailCurve(
            u=u.tolist(),
            ccdf=monotone.tolist(),
            max_clip_deviation=clip_deviation,
            monotone_adjustment=adjustment,
            heavy_tail_warning=heavy_tailed,
        )

    @staticmethod
    def _panel_nodes(panels: int, nodes: int, t_max: float) -> tuple[np.ndarray, np.ndarray]:
        """Gauss-Legendre nodes and weights on `panels` equal panels of [0, t_max]."""
        x, w = np.polynomial.legendre.leggauss(nodes)
        width = t_max / panels
        left = width * np.arange(panels)
        t = (left[:, None] + width * (x[None, :] + 1) / 2).ravel()
        weights = np.tile(w * width / 2, panels)
        return t, weights

    @staticmethod
    def _integral(
        model: LevyModel,
        beta: float,
        omega: float,
        alpha: float,
        panels: int,
        qcfg: ExponentQuadratureConfig,
        seed: int,
        threads: int,
    ) -> tuple[float, float]:
        t_max = -math.log(qcfg.cutoff) / beta
        t, weights = InversionService._panel_nodes(panels, qcfg.nodes_per_panel, t_max)
        factor = np.exp(-beta * t) * -np.expm1(-omega * t) / t * weights

        def node_moments(node: int) -> tuple[float, float]:
            rng = derive_generator(seed, constants.EXPONENT_STREAM, panels, node)
            level = sample_levels(model, t[node], rng, qcfg.paths_per_node)
            gain = np.where(level > 0, -np.expm1(-alpha * level), 0.0)
            return float(gain.mean()), float(gain.var(ddof=1) / gain.size)

        moments = np.asarray(map_ordered(node_moments, range(t.size), threads))
        estimate = float(factor @ moments[:, 0])
        stderr = float(math.sqrt((factor**2) @ moments[:, 1]))
        return estimate, stderr

    @staticmethod
    def inspected_exponent_estimate(
        model: LevyModel,
        beta: float,
        omega: float,
        alpha: float,
        seed: int,
        qcfg: ExponentQuadratureConfig | None = None,
        threads: int = 1,
    ) -> ExponentEstimate:
        """
        -log E e^{-αY_{β,ω}} from its integral representation.

        ∫_0^∞ e^{-βt} (1 - e^{-ωt}) / t · E[(1 - e^{-αY(t)}) 1{Y(t) > 0}] dt, with
        Gauss-Legendre panels in t (truncated where e^{-βt} < cutoff) and a
        Monte-Carlo expectation at every node. Panels double until the change is
        within the Monte-Carlo standard error.
        """
        if not beta > 0:
            raise NoKillingError(beta)
        qcfg = qcfg or ExponentQuadratureConfig()
        if alpha == 0 or omega == 0:
            return ExponentEstimate(
                estimate=0.0, stderr=0.0, implied_transform=1.0, panels=0, nodes=0, converged=True
            )

        panels = qcfg.initial_panels
        estimate, stderr = InversionService._integral(
            model, beta, omega, alpha, panels, qcfg, seed, threads
        )
        converged = False
        while 2 * panels <= qcfg.max_panels:
            finer, finer_stderr = InversionService._integral(
                model, beta, omega, alpha, 2 * panels, qcfg, seed, threads
            )
            change = abs(finer - estimate)
            panels, estimate, previous_stderr, stderr = 2 * panels, finer, stderr, finer_stderr
            logger.debug(f"Exponent integral with {panels} panels: {estimate:.6g} (change {change:.3g})")
            if change <= math.hypot(stderr, previous_stderr):
                converged = True
                break
        if not converged:
            logger.warning(f"Exponent integral not settled within {qcfg.max_panels} panels")
        return ExponentEstimate(
            estimate=estimate,
            stderr=stderr,
            implied_transform=math.exp(-estimate),
            panels=panels,
            nodes=panels * qcfg.nodes_per_panel,
            converged=converged,
        )

    @staticmethod
    def inspected_max_curve(
        model: LevyModel, scheme: InspectionScheme, u_grid, cfg: InversionConfig | None = None
    ) -> TailCurve:
        """P(Y_{β,ω} > u) by inverting the closed-form transform."""
        heavy = model.is_compound_poisson and model.claims.kind == "pareto_lomax"

        def transform(alpha):
            return TransformService.lst_inspected_max(model, scheme, alpha)

        return InversionService.invert_ccdf(transform, u_grid, cfg, heavy_tailed=heavy)
