"""Closed-form transforms of running and inspected maxima."""

import math
from collections.abc import Callable

import numpy as np

from app.core.config import settings
from app.core.exceptions import UnsupportedMomentError
from app.levy_models import LevyModel, LevyModelService, RootSolveConfig
from app.levy_models.exceptions import OrientationError
from app.transforms.exceptions import (
    CountArgumentError,
    ErlangSchemeError,
    NonPositiveRateError,
)
from app.transforms.schemas import InspectionScheme, LstCurve


def _prepare(alpha) -> tuple[np.ndarray, bool]:
    arr = np.asarray(alpha)
    if not np.iscomplexobj(arr):
        arr = arr.astype(float)
    return arr, arr.ndim == 0


def _finish(values, scalar: bool):
    values = np.asarray(values)
    return values.item() if scalar else values


def _require_spectrally_positive(model: LevyModel, operation: str) -> None:
    if not model.is_spectrally_positive:
        raise OrientationError(operation, model.orientation.value, "spectrally positive")


def _require_positive(name: str, value: float) -> None:
    if not value > 0:
        raise NonPositiveRateError(name, value)


class TransformService:
    """Transforms of Ȳ(T_ζ), Y_{β,ω} and their components."""

    @staticmethod
    def _wiener_hopf_ratio(model: LevyModel, zeta: float, arr: np.ndarray, psi: float, phi=None):
        """
        (ζ - φ(α)) / (ψ(ζ) - α) for a spectrally positive model.

        Near α = ψ(ζ) the quotient is replaced by φ'(ψ) + φ''(ψ)(α - ψ)/2.
        """
        if phi is None:
            phi = np.asarray(LevyModelService.laplace_exponent(model, arr))
        gap = psi - arr
        near = np.abs(gap) < settings.SINGULARITY_THRESHOLD * max(1.0, psi)
        safe_gap = np.where(near, 1.0, gap)
        ratio = (zeta - phi) / safe_gap
        if np.any(near):
            d1 = LevyModelService.exponent_derivative(model, psi, 1)
            d2 = LevyModelService.exponent_derivative(model, psi, 2)
            ratio = np.where(near, d1 + 0.5 * d2 * (arr - psi), ratio)
        return ratio

    @staticmethod
    def _sp_all_time_max(model: LevyModel, arr: np.ndarray, phi=None):
        """φ'(0) α / φ(α), continued by φ'(0) / (φ'(0) + φ''(0) α / 2) near 0."""
        slope = LevyModelService.safety_loading(model)
        if phi is None:
            phi = np.asarray(LevyModelService.laplace_exponent(model, arr))
        near = np.abs(arr) < settings.SINGULARITY_THRESHOLD
        safe_phi = np.where(near, 1.0, phi)
        values = slope * arr / safe_phi
        if np.any(near):
            curvature = LevyModelService.exponent_derivative(model, 0.0, 2)
            series = slope / (slope + 0.5 * curvature * arr) if math.isfinite(curvature) else 1.0
            values = np.where(near, series, values)
        return values

    @staticmethod
    def _running_max(model: LevyModel, zeta: float, arr: np.ndarray, cfg: RootSolveConfig):
        """E e^{-α Ȳ(T_ζ)}; ζ = 0 stands for the all-time maximum."""
        psi = LevyModelService.exponent_inverse(model, zeta, cfg)
        if model.has_exponential_maximum:
            return psi / (psi + arr)
        if zeta == 0:
            return TransformService._sp_all_time_max(model, arr)
        return zeta / (psi * TransformService._wiener_hopf_ratio(model, zeta, arr, psi))

    @staticmethod
    def lst_running_max(model: LevyModel, zeta: float, alpha, cfg: RootSolveConfig | None = None):
        """
        Transform of the running maximum over an exp(ζ) horizon.

        SP: ζ/(ζ-φ(α)) · (ψ(ζ)-α)/ψ(ζ); SN and Brownian: Ψ(ζ)/(Ψ(ζ)+α).
        """
        _require_positive("zeta", zeta)
        arr, scalar = _prepare(alpha)
        values = TransformService._running_max(model, zeta, arr, cfg or RootSolveConfig())
        return _finish(values, scalar)

    @staticmethod
    def lst_all_time_max(model: LevyModel, alpha, cfg: RootSolveConfig | None = None):
        """Transform of sup_{t>=0} Y(t); needs a finite supremum."""
        LevyModelService.require_finite_supremum(model)
        arr, scalar = _prepare(alpha)
        values = TransformService._running_max(model, 0.0, arr, cfg or RootSolveConfig())
        return _finish(values, scalar)

    @staticmethod
    def _sp_inspected_max(
        model: LevyModel, beta: float, omega: float, arr: np.ndarray, cfg: RootSolveConfig
    ):
        """
        β/(β-φ(α)) · (ψ(β)-α)/ψ(β) · (β+ω-φ(α))/(β+ω) · ψ(β+ω)/(ψ(β+ω)-α).

        The zero of β-φ(α) at α = ψ(β) cancels against ψ(β)-α, and likewise at
        β + ω; both pairs are continued by their series. At β = 0 the first pair
        is φ'(0)α/φ(α).
        """
        phi = np.asarray(LevyModelService.laplace_exponent(model, arr))
        upper = beta + omega
        psi_hi = LevyModelService.exponent_inverse(model, upper, cfg)
        tail_ratio = TransformService._wiener_hopf_ratio(model, upper, arr, psi_hi, phi)
        tail_pair = (psi_hi / upper) * tail_ratio
        if beta == 0:
            return TransformService._sp_all_time_max(model, arr, phi) * tail_pair
        psi_lo = LevyModelService.exponent_inverse(model, beta, cfg)
        head_ratio = TransformService._wiener_hopf_ratio(model, beta, arr, psi_lo, phi)
        return beta / (psi_lo * head_ratio) * tail_pair

    @staticmethod
    def lst_inspected_max(
        model: LevyModel, scheme: InspectionScheme, alpha, cfg: RootSolveConfig | None = None
    ):
        """
        Transform of the maximum Y_{β,ω} of Y observed at Poisson(ω) epochs before T_β.

        SP models use the four-factor product, which at β = 0 is the generalized
        Pollaczek-Khinchine form. SN and Brownian models give
        Ψ(β)/(Ψ(β)+α) · (Ψ(β+ω)+α)/Ψ(β+ω).
        """
        if scheme.kind != "poisson":
            raise ErlangSchemeError(scheme.k)
        cfg = cfg or RootSolveConfig()
        arr, scalar = _prepare(alpha)
        beta, omega = scheme.beta, scheme.omega
        if beta == 0:
            LevyModelService.require_finite_supremum(model)
        if model.has_exponential_maximum:
            psi_lo = LevyModelService.exponent_inverse(model, beta, cfg)
            psi_hi = LevyModelService.exponent_inverse(model, beta + omega, cfg)
            values = (psi_lo / (psi_lo + arr)) * ((psi_hi + arr) / psi_hi)
        else:
            values = TransformService._sp_inspected_max(model, beta, omega, arr, cfg)
        return _finish(values, scalar)

    @staticmethod
    def sn_atom(model: LevyModel, beta: float, omega: float, cfg: RootSolveConfig | None = None) -> float:
        """P(Y_{β,ω} = 0) = Ψ(β)/Ψ(β+ω) for spectrally negative models."""
        if model.is_spectrally_positive:
            raise OrientationError("sn_atom", model.orientation.value, "spectrally negative")
        _require_positive("omega", omega)
        cfg = cfg or RootSolveConfig()
        return LevyModelService.exponent_inverse(model, beta, cfg) / LevyModelService.exponent_inverse(
            model, beta + omega, cfg
        )

    @staticmethod
    def lst_increment_components(
        model: LevyModel, beta: float, omega: float, alpha, cfg: RootSolveConfig | None = None
    ):
        """Transforms of Z⁺ ~ Ȳ(T_{β+ω}) and Z⁻ ~ exp(ψ(β+ω))."""
        plus, rate = TransformService.erlang_component_lsts(model, beta, omega, 1, alpha, cfg)
        arr, scalar = _prepare(alpha)
        return plus, _finish(rate / (rate + arr), scalar)

    @staticmethod
    def erlang_component_lsts(
        model: LevyModel, beta: float, omega: float, k: int, alpha, cfg: RootSolveConfig | None = None
    ):
        """
        Components of one Erlang(k, kω) inspection sub-interval.

        Returns the Z⁺ transform (running maximum at β + kω) and the exponential
        rate ψ(β + kω) of Z⁻.
        """
        _require_spectrally_positive(model, "erlang_component_lsts")
        _require_positive("omega", omega)
        cfg = cfg or RootSolveConfig()
        zeta = beta + k * omega
        arr, scalar = _prepare(alpha)
        values = TransformService._running_max(model, zeta, arr, cfg)
        return _finish(values, scalar), LevyModelService.exponent_inverse(model, zeta, cfg)

    @staticmethod
    def running_max_moments(
        model: LevyModel, zeta: float, cfg: RootSolveConfig | None = None
    ) -> tuple[float, float]:
        """Mean and variance of Ȳ(T_ζ)."""
        _require_positive("zeta", zeta)
        psi = LevyModelService.exponent_inverse(model, zeta, cfg or RootSolveConfig())
        if model.has_exponential_maximum:
            return 1 / psi, 1 / psi**2
        slope = LevyModelService.safety_loading(model)
        mean = 1 / psi - slope / zeta
        curvature = LevyModelService.exponent_derivative(model, 0.0, 2)
        if not math.isfinite(curvature):
            raise UnsupportedMomentError(
                "variance of the running maximum needs a finite second claim moment", mean=mean
            )
        variance = curvature / zeta + (slope / zeta) ** 2 - 1 / psi**2
        return mean, variance

    @staticmethod
    def inspected_max_moments(
        model: LevyModel, beta: float, omega: float, cfg: RootSolveConfig | None = None
    ) -> tuple[float, float]:
        """Mean and variance of Y_{β,ω}: differences of the running-maximum moments."""
        _require_positive("beta", beta)
        _require_positive("omega", omega)
        cfg = cfg or RootSolveConfig()
        try:
            mean_lo, var_lo = TransformService.running_max_moments(model, beta, cfg)
            mean_hi, var_hi = TransformService.running_max_moments(model, beta + omega, cfg)
        except UnsupportedMomentError:
            psi_lo = LevyModelService.exponent_inverse(model, beta, cfg)
            psi_hi = LevyModelService.exponent_inverse(model, beta + omega, cfg)
            mean = 1 / psi_lo - 1 / psi_hi - LevyModelService.safety_loading(model) * (
                1 / beta - 1 / (beta + omega)
            )
            raise UnsupportedMomentError(
                "variance of the inspected maximum needs a finite second claim moment", mean=mean
            ) from None
        return mean_lo - mean_hi, var_lo - var_hi

    @staticmethod
    def factorization_residual(
        model: LevyModel, beta: float, omega: float, alpha_grid, cfg: RootSolveConfig | None = None
    ) -> float:
        """max |E e^{-αȲ(T_β)} - E e^{-αY_{β,ω}} · E e^{-αȲ(T_{β+ω})}| over the grid."""
        cfg = cfg or RootSolveConfig()
        arr = np.asarray(alpha_grid, dtype=float)
        if beta == 0:
            whole = TransformService.lst_all_time_max(model, arr, cfg)
        else:
            whole = TransformService.lst_running_max(model, beta, arr, cfg)
        tail = TransformService.lst_running_max(model, beta + omega, arr, cfg)
        inspected = np.asarray(
            TransformService.lst_inspected_max(model, InspectionScheme.poisson(beta, omega), arr, cfg)
        )
        return float(np.max(np.abs(whole - inspected * tail)))

    @staticmethod
    def erlang_count_pmf(beta: float, omega: float, k: int, n):
        """P(N = n) for the number of Erlang(k, kω) inspections before T_β."""
        _require_positive("omega", omega)
        counts = np.asarray(n)
        if isinstance(k, bool) or int(k) != k or k < 1:
            raise CountArgumentError("k", 1, k)
        if counts.size and (np.any(counts < 0) or np.any(np.floor(counts) != counts)):
            raise CountArgumentError("n", 0, n)
        q = k * omega / (k * omega + beta)
        values = q ** (k * counts) * (1 - q**k)
        return _finish(values, counts.ndim == 0)

    @staticmethod
    def inspected_count_pmf(beta: float, omega: float, n):
        """Shifted-geometric P(N = n) for Poisson(ω) inspection."""
        return TransformService.erlang_count_pmf(beta, omega, 1, n)

    @staticmethod
    def lst_curve(evaluator: Callable, alpha_grid) -> LstCurve:
        """Tabulate a real transform on the grid as a validated curve."""
        arguments = [float(a) for a in alpha_grid]
        values = np.asarray(evaluator(np.asarray(arguments)), dtype=float)
        return LstCurve(arguments=arguments, values=[float(v) for v in np.atleast_1d(values)])
