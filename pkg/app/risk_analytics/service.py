"""Ruin and bankruptcy probabilities and their asymptotes."""

import logging

import numpy as np
from scipy import optimize

from app.core.exceptions import DomainError
from app.inversion import InversionConfig, InversionMethod, InversionService, TailCurve
from app.levy_models import JumpLaw, JumpLawService, LevyModel, LevyModelService, RootSolveConfig
from app.levy_models.exceptions import HeavyTailRegimeError, OrientationError, RootNotFoundError
from app.risk_analytics import constants
from app.risk_analytics.exceptions import (
    EpsilonRangeError,
    LightTailRegimeError,
    NotExponentialClaimsError,
)
from app.risk_analytics.schemas import AsymptoteReport, Regime, RuleOfThumbRow, TailRow
from app.transforms import InspectionScheme, TransformService

logger = logging.getLogger(__name__)


def _require_cramer_lundberg(model: LevyModel, operation: str) -> None:
    if not (model.is_spectrally_positive and model.is_compound_poisson):
        raise OrientationError(operation, model.orientation.value, "spectrally positive")
    LevyModelService.require_finite_supremum(model)


def _scalar_or_array(values, u):
    return float(values) if np.ndim(u) == 0 else np.asarray(values)


class RiskService:
    """Cramér-Lundberg ruin p(u) and Poisson-inspected bankruptcy p̃(u)."""

    @staticmethod
    def ruin_exact_exponential(model: LevyModel, u):
        """p(u) = λ/(rμ) e^{-(μ - λ/r) u} for exponential(μ) claims."""
        _require_cramer_lundberg(model, "ruin_exact_exponential")
        if model.claims.kind != "exponential":
            raise NotExponentialClaimsError(model.claims.kind)
        mu, lam, r = model.claims.rate, model.arrival_rate, model.premium_rate
        values = lam / (r * mu) * np.exp(-(mu - lam / r) * np.asarray(u, dtype=float))
        return _scalar_or_array(values, u)

    @staticmethod
    def cl_asymptote(model: LevyModel, u, cfg: RootSolveConfig | None = None):
        """γ e^{-θ* u} with γ = -φ'(0)/φ'(-θ*); returns (value, θ*, γ)."""
        _require_cramer_lundberg(model, "cl_asymptote")
        theta = LevyModelService.adjustment_coefficient(model, cfg)
        slope = LevyModelService.exponent_derivative(model, -theta, 1)
        gamma = -LevyModelService.safety_loading(model) / slope
        values = gamma * np.exp(-theta * np.asarray(u, dtype=float))
        return _scalar_or_array(values, u), theta, gamma

    @staticmethod
    def bankruptcy_asymptote_light(
        model: LevyModel, omega: float, u, cfg: RootSolveConfig | None = None
    ):
        """
        γ̃ e^{-θ* u} with γ̃ = γ ψ(ω)/(ψ(ω) + θ*); returns (value, report).

        The report also carries the residual of the inspected decay-rate equation
        at θ*, whose other root -ψ(ω) is negative and rejected.
        """
        cfg = cfg or RootSolveConfig()
        _, theta, gamma = RiskService.cl_asymptote(model, 0.0, cfg)
        psi = LevyModelService.exponent_inverse(model, omega, cfg)
        ratio = psi / (psi + theta)
        gamma_tilde = gamma * ratio
        # φ̃(-θ) = -θ - ψ(ω)(1 - E e^{θ Z⁺}), Z⁺ ~ Ȳ(T_ω)
        tilted = TransformService.lst_running_max(model, omega, -theta, cfg)
        residual = abs(-theta - psi * (1 - tilted))
        report = AsymptoteReport(
            regime=Regime.LIGHT,
            omega=omega,
            theta_star=theta,
            gamma=gamma,
            gamma_tilde=gamma_tilde,
            gamma_star_omega=ratio,
            fixed_point_residual=residual,
            rejected_root=-psi,
        )
        values = gamma_tilde * np.exp(-theta * np.asarray(u, dtype=float))
        return _scalar_or_array(values, u), report

    @staticmethod
    def information_loss(model: LevyModel, omega: float, cfg: RootSolveConfig | None = None) -> float:
        """ω(1 - γ*ω), increasing in ω towards rθ*."""
        cfg = cfg or RootSolveConfig()
        theta = LevyModelService.adjustment_coefficient(model, cfg)
        psi = LevyModelService.exponent_inverse(model, omega, cfg)
        return omega * theta / (psi + theta)

    @staticmethod
    def rule_of_thumb_rate(
        model: LevyModel, epsilon: float, cfg: RootSolveConfig | None = None
    ) -> RuleOfThumbRow:
        """
        Minimal inspection rate for 1 - γ*ω <= ε.

        ω_min = rθ*/ε comes from the large-ω limit; the exact rate solves
        ψ(ω) = θ*(1-ε)/ε, i.e. ω = φ(θ*(1-ε)/ε), and is cross-checked by a
        bracketed solve of 1 - γ*ω = ε.
        """
        if not 0 < epsilon < 1:
            raise EpsilonRangeError(epsilon)
        cfg = cfg or RootSolveConfig()
        theta = LevyModelService.adjustment_coefficient(model, cfg)
        limit = model.premium_rate * theta
        omega_min = limit / epsilon
        omega_exact = float(
            LevyModelService.laplace_exponent(model, theta * (1 - epsilon) / epsilon)
        )

        def gap(omega: float) -> float:
            psi = LevyModelService.exponent_inverse(model, omega, cfg)
            return theta / (psi + theta) - epsilon

        hi = max(omega_min, omega_exact, 1.0)
        while gap(hi) > 0:
            hi *= 2
        try:
            solved = optimize.brentq(gap, hi * 1e-12, hi, xtol=cfg.abs_tol, rtol=cfg.rel_tol)
        except (RuntimeError, ValueError) as exc:
            raise RootNotFoundError(f"rule-of-thumb solve failed: {exc}", (0.0, hi)) from exc
        logger.debug(f"Rule of thumb eps={epsilon}: min={omega_min} exact={omega_exact}")
        return RuleOfThumbRow(
            epsilon=epsilon,
            omega_min=omega_min,
            omega_exact=omega_exact,
            omega_exact_solved=solved,
            limit=limit,
        )

    @staticmethod
    def residual_ccdf(law: JumpLaw, u):
        """P(B^res > u) = ∫_u^∞ P(B > y) dy / E B."""
        return JumpLawService.residual_ccdf(law, u)

    @staticmethod
    def z_plus_tail_asymptote(model: LevyModel, omega: float, u):
        """(λ/ω) P(B > u), the heavy-tailed tail of Ȳ(T_ω)."""
        values = model.arrival_rate / omega * np.asarray(JumpLawService.jump_ccdf(model.claims, u))
        return _scalar_or_array(values, u)

    @staticmethod
    def bankruptcy_asymptote_heavy(model: LevyModel, u):
        """
        λE[B]/(r - λE[B]) · P(B^res > u), the same for every inspection rate.

        Returns (value, report); near-critical loading gives value None and a warning.
        """
        _require_cramer_lundberg(model, "bankruptcy_asymptote_heavy")
        if not JumpLawService.is_heavy_tailed(model.claims):
            raise LightTailRegimeError("bankruptcy_asymptote_heavy", model.claims.kind)
        drain = model.arrival_rate * JumpLawService.jump_moment(model.claims, 1)
        load = drain / model.premium_rate
        if load >= constants.NEAR_CRITICAL_LOAD:
            warning = constants.NEAR_CRITICAL_WARNING.format(load=load)
            logger.warning(warning)
            return None, AsymptoteReport(regime=Regime.HEAVY, warning=warning)
        prefactor = drain / (model.premium_rate - drain)
        values = prefactor * np.asarray(JumpLawService.residual_ccdf(model.claims, u))
        return _scalar_or_array(values, u), AsymptoteReport(regime=Regime.HEAVY, prefactor=prefactor)

    @staticmethod
    def _inversion_config(model: LevyModel, cfg: InversionConfig | None, root_cfg) -> InversionConfig:
        """Damp light-tailed Euler inversions at 0.9 θ*."""
        cfg = cfg or InversionConfig()
        if (
            cfg.method is InversionMethod.EULER
            and cfg.damping == 0
            and not JumpLawService.is_heavy_tailed(model.claims)
        ):
            theta = LevyModelService.adjustment_coefficient(model, root_cfg)
            cfg = cfg.model_copy(update={"damping": constants.DAMPING_SHARE * theta})
        return cfg

    @staticmethod
    def _rows(curve: TailCurve, asymptote) -> list[TailRow]:
        rows = []
        for i, (u, value) in enumerate(zip(curve.u, curve.ccdf, strict=True)):
            level = None if asymptote is None else float(asymptote[i])
            ratio = value / level if level else None
            rows.append(TailRow(u=u, value=value, asymptote=level, ratio=ratio))
        return rows

    @staticmethod
    def _asymptote(model: LevyModel, omega: float | None, u: np.ndarray, root_cfg):
        try:
            if omega is None:
                return RiskService.cl_asymptote(model, u, root_cfg)[0]
            return RiskService.bankruptcy_asymptote_light(model, omega, u, root_cfg)[0]
        except HeavyTailRegimeError:
            return RiskService.bankruptcy_asymptote_heavy(model, u)[0]

    @staticmethod
    def ruin_curve(
        model: LevyModel,
        u_grid,
        cfg: InversionConfig | None = None,
        root_cfg: RootSolveConfig | None = None,
    ) -> list[TailRow]:
        """Inverted p(u) with its Cramér-Lundberg or heavy-tailed asymptote."""
        _require_cramer_lundberg(model, "ruin_curve")
        root_cfg = root_cfg or RootSolveConfig()
        u = np.asarray(u_grid, dtype=float)

        def transform(alpha):
            return TransformService.lst_all_time_max(model, alpha, root_cfg)

        curve = InversionService.invert_ccdf(
            transform,
            u,
            RiskService._inversion_config(model, cfg, root_cfg),
            heavy_tailed=JumpLawService.is_heavy_tailed(model.claims),
        )
        return RiskService._rows(curve, RiskService._asymptote(model, None, u, root_cfg))

    @staticmethod
    def bankruptcy_curve(
        model: LevyModel,
        omega: float,
        u_grid,
        cfg: InversionConfig | None = None,
        root_cfg: RootSolveConfig | None = None,
    ) -> list[TailRow]:
        """Inverted p̃(u) = P(Y_{0,ω} > u) with its asymptote."""
        _require_cramer_lundberg(model, "bankruptcy_curve")
        root_cfg = root_cfg or RootSolveConfig()
        u = np.asarray(u_grid, dtype=float)
        scheme = InspectionScheme.poisson(0.0, omega)

        def transform(alpha):
            return TransformService.lst_inspected_max(model, scheme, alpha, root_cfg)

        curve = InversionService.invert_ccdf(
            transform,
            u,
            RiskService._inversion_config(model, cfg, root_cfg),
            heavy_tailed=JumpLawService.is_heavy_tailed(model.claims),
        )
        return RiskService._rows(curve, RiskService._asymptote(model, omega, u, root_cfg))

    @staticmethod
    def decay_slope(rows: list[TailRow], u_lo: float, u_hi: float) -> float:
        """Least-squares slope of log value against u over [u_lo, u_hi]."""
        points = [(r.u, r.value) for r in rows if u_lo <= r.u <= u_hi and r.value > 0]
        if len(points) < 2:
            raise DomainError(f"need two positive points in [{u_lo}, {u_hi}]")
        u, value = np.asarray(points).T
        return float(np.polyfit(u, np.log(value), 1)[0])
