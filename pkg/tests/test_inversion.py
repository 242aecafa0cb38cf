"""Tests for transform inversion and the inspected-exponent estimator."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.inversion import (
    ExponentQuadratureConfig,
    InversionConfig,
    InversionMethod,
    InversionService,
    TailCurve,
)
from app.inversion.exceptions import NoKillingError, RealOnlyEvaluatorError
from app.inversion.service import stehfest_weights
from app.transforms import InspectionScheme, TransformService
from app.transforms.exceptions import ErlangSchemeError
from tests.factories import InspectionSchemeFactory

PSI_1 = (0.5 + math.sqrt(4.25)) / 2
PSI_2 = (1.5 + math.sqrt(10.25)) / 2
U_GRID = np.linspace(0.5, 10.0, 20)


def exponential_lst(rate: float):
    def lst(alpha):
        return rate / (rate + np.asarray(alpha))

    return lst


def gamma_lst(alpha):
    """Transform of a Gamma(2, 1) variable."""
    return 1 / (1 + np.asarray(alpha)) ** 2


def hyperexponential_lst(alpha):
    """Transform of the mixture 0.4 Exp(0.5) + 0.6 Exp(2)."""
    alpha = np.asarray(alpha)
    return 0.4 * 0.5 / (0.5 + alpha) + 0.6 * 2 / (2 + alpha)


class TestInversionConfig:
    """Test inversion settings validation."""

    def test_defaults(self):
        """Test defaults come from settings."""
        cfg = InversionConfig()
        assert cfg.method is InversionMethod.EULER
        assert cfg.euler_terms == 38
        assert cfg.stehfest_order == 16

    def test_odd_stehfest_order(self):
        """Test the Gaver-Stehfest order must be even."""
        with pytest.raises(ValidationError):
            InversionConfig(method="gaver_stehfest", stehfest_order=15)

    def test_euler_terms_range(self):
        """Test Euler terms are limited to 15..50."""
        with pytest.raises(ValidationError):
            InversionConfig(euler_terms=60)

    def test_damping_requires_euler(self):
        """Test damping is rejected for Gaver-Stehfest."""
        with pytest.raises(ValidationError):
            InversionConfig(method="gaver_stehfest", damping=0.5)


class TestStehfestWeights:
    """Test the Gaver-Stehfest weights."""

    @pytest.mark.parametrize("order", [10, 12, 14])
    def test_constant_is_reproduced(self, order):
        """Test Σ V_k/k = 1, the inversion of 1/s."""
        weights = stehfest_weights(order)
        k = np.arange(1, order + 1)
        assert math.fsum(weights / k) == pytest.approx(1.0, abs=1e-6)

    def test_weights_sum_to_zero(self):
        """Test Σ V_k = 0."""
        weights = stehfest_weights(12)
        assert math.fsum(weights) == pytest.approx(0.0, abs=1e-9 * np.abs(weights).max())


class TestInvertCcdf:
    """Test tail-curve inversion."""

    def test_euler_exponential(self):
        """Test P(X > u) = e^{-u} for X ~ Exp(1)."""
        curve = InversionService.invert_ccdf(exponential_lst(1.0), U_GRID)
        np.testing.assert_allclose(curve.ccdf, np.exp(-U_GRID), atol=1e-7)

    def test_euler_gamma(self):
        """Test P(X > u) = (1 + u)e^{-u} for X ~ Gamma(2, 1)."""
        curve = InversionService.invert_ccdf(gamma_lst, U_GRID)
        np.testing.assert_allclose(curve.ccdf, (1 + U_GRID) * np.exp(-U_GRID), atol=1e-7)

    @pytest.mark.parametrize(
        ("lst", "ccdf"),
        [
            (exponential_lst(1.0), lambda u: np.exp(-u)),
            (gamma_lst, lambda u: (1 + u) * np.exp(-u)),
            (hyperexponential_lst, lambda u: 0.4 * np.exp(-0.5 * u) + 0.6 * np.exp(-2 * u)),
        ],
        ids=["exponential", "erlang2", "hyperexponential"],
    )
    def test_round_trip(self, lst, ccdf):
        """Test closed-form pairs to 1e-7 on [0, 20]."""
        u = np.linspace(0.0, 20.0, 41)
        curve = InversionService.invert_ccdf(lst, u)
        np.testing.assert_allclose(curve.ccdf, ccdf(u), atol=1e-7)

    @pytest.mark.parametrize("lst", [exponential_lst(1.0), hyperexponential_lst])
    def test_methods_agree(self, lst):
        """Test Euler summation and Gaver-Stehfest agree to 1e-6 on (0, 20]."""
        u = np.linspace(0.5, 20.0, 40)
        euler = InversionService.invert_ccdf(lst, u)
        stehfest = InversionService.invert_ccdf(
            lst, u, InversionConfig(method=InversionMethod.GAVER_STEHFEST, stehfest_order=14)
        )
        np.testing.assert_allclose(euler.ccdf, stehfest.ccdf, atol=1e-6)

    def test_gaver_stehfest_exponential(self):
        """Test the real-axis method on Exp(2)."""
        cfg = InversionConfig(method=InversionMethod.GAVER_STEHFEST)
        curve = InversionService.invert_ccdf(exponential_lst(2.0), U_GRID[:8], cfg)
        np.testing.assert_allclose(curve.ccdf, np.exp(-2 * U_GRID[:8]), atol=1e-4)

    def test_origin_uses_limit(self):
        """Test ccdf(0) = 1 - L(α_∞)."""
        curve = InversionService.invert_ccdf(exponential_lst(1.0), [0.0, 1.0])
        assert curve.ccdf[0] == pytest.approx(1.0, abs=1e-7)

    def test_damping_keeps_deep_tail_accuracy(self):
        """Test relative accuracy of e^{-u} at u = 30 with damping 0.9."""
        u = np.array([10.0, 20.0, 30.0])
        curve = InversionService.invert_ccdf(exponential_lst(1.0), u, InversionConfig(damping=0.9))
        np.testing.assert_allclose(curve.ccdf, np.exp(-u), rtol=1e-6)

    def test_ruin_curve(self, sp_model):
        """Test the all-time maximum inverts to 0.5 e^{-0.5u} on [0, 20]."""
        u = np.linspace(0.0, 20.0, 41)

        def lst(alpha):
            return TransformService.lst_all_time_max(sp_model, alpha)

        curve = InversionService.invert_ccdf(lst, u)
        np.testing.assert_allclose(curve.ccdf, 0.5 * np.exp(-0.5 * u), atol=1e-7)
        assert curve.ccdf[4] == pytest.approx(0.1839397, abs=1e-7)

    def test_real_only_evaluator(self):
        """Test Euler summation rejects evaluators without complex support."""
        with pytest.raises(RealOnlyEvaluatorError):
            InversionService.invert_ccdf(lambda a: math.exp(-a), [1.0])

    def test_real_only_evaluator_with_stehfest(self):
        """Test Gaver-Stehfest accepts real-only evaluators."""
        cfg = InversionConfig(method="gaver_stehfest")
        curve = InversionService.invert_ccdf(
            lambda a: np.asarray([1 / (1 + x) for x in np.asarray(a).ravel()]).reshape(np.shape(a)),
            [1.0],
            cfg,
        )
        assert curve.ccdf[0] == pytest.approx(math.exp(-1), abs=1e-4)

    def test_heavy_tail_flag(self, pareto_model):
        """Test heavy-tailed inversions are flagged."""

        def lst(alpha):
            return TransformService.lst_all_time_max(pareto_model, alpha)

        curve = InversionService.invert_ccdf(lst, [1.0, 2.0], heavy_tailed=True)
        assert curve.heavy_tail_warning
        assert 0 < curve.ccdf[1] <= curve.ccdf[0] < 1

    def test_curve_is_valid(self):
        """Test the result satisfies the tail-curve invariants."""
        curve = InversionService.invert_ccdf(exponential_lst(1.0), U_GRID)
        assert isinstance(curve, TailCurve)
        assert curve.max_clip_deviation < 1e-7
        assert all(b <= a for a, b in zip(curve.ccdf, curve.ccdf[1:], strict=False))


class TestTailCurve:
    """Test tail-curve validation."""

    def test_rejects_increasing(self):
        """Test ccdf values must be nonincreasing."""
        with pytest.raises(ValidationError):
            TailCurve(u=[0.0, 1.0], ccdf=[0.2, 0.3])

    def test_rejects_out_of_range(self):
        """Test ccdf values must lie in [0, 1]."""
        with pytest.raises(ValidationError):
            TailCurve(u=[0.0], ccdf=[1.5])


class TestInspectedMaxCurve:
    """Test the inverted law of Y_{β,ω}."""

    def test_mass_above_zero(self, sp_model):
        """Test P(Y_{1,1} > 0) = 1 - ψ(2)/(2ψ(1))."""
        curve = InversionService.inspected_max_curve(sp_model, InspectionSchemeFactory(), [0.0])
        assert curve.ccdf[0] == pytest.approx(1 - PSI_2 / (2 * PSI_1), abs=1e-6)

    def test_integral_is_mean(self, sp_model):
        """Test ∫ P(Y > u) du equals the closed-form mean."""
        u = np.linspace(0.0, 30.0, 1201)
        curve = InversionService.inspected_max_curve(sp_model, InspectionSchemeFactory(), u)
        assert np.trapezoid(curve.ccdf, u) == pytest.approx(0.1053858, abs=1e-4)

    def test_sn_atom(self, sn_model):
        """Test P(Y > 0) = 1 - Ψ(1)/Ψ(2) for the SN model."""
        curve = InversionService.inspected_max_curve(sn_model, InspectionSchemeFactory(), [0.0, 1.0])
        assert curve.ccdf[0] == pytest.approx(1 - 0.5448302, abs=1e-6)

    def test_erlang_scheme(self, sp_model):
        """Test Erlang inspection has no transform to invert."""
        with pytest.raises(ErlangSchemeError):
            InversionService.inspected_max_curve(sp_model, InspectionScheme.erlang(1.0, 1.0, 2), [1.0])


class TestExponentEstimate:
    """Test the integral representation of -log E e^{-αY_{β,ω}}."""

    def test_requires_killing(self, sp_model):
        """Test β = 0 is rejected."""
        with pytest.raises(NoKillingError):
            InversionService.inspected_exponent_estimate(sp_model, 0.0, 1.0, 1.0, seed=1)

    def test_zero_alpha(self, sp_model):
        """Test α = 0 gives exponent 0 without simulation."""
        estimate = InversionService.inspected_exponent_estimate(sp_model, 1.0, 1.0, 0.0, seed=1)
        assert estimate.estimate == 0.0
        assert estimate.implied_transform == 1.0

    def test_small_run(self, sp_model):
        """Test a small run lands within four standard errors of -log 0.9538657."""
        qcfg = ExponentQuadratureConfig(
            initial_panels=4, max_panels=8, nodes_per_panel=8, paths_per_node=4000
        )
        estimate = InversionService.inspected_exponent_estimate(
            sp_model, 1.0, 1.0, 1.0, seed=11, qcfg=qcfg
        )
        assert estimate.stderr > 0
        assert estimate.panels in (4, 8)
        assert estimate.nodes == estimate.panels * 8
        assert abs(estimate.estimate - 0.0472297) <= 4 * estimate.stderr
        assert estimate.implied_transform == pytest.approx(math.exp(-estimate.estimate))

    def test_spectrally_negative(self, sn_model):
        """Test the SN estimate lands within four standard errors of the closed form."""
        qcfg = ExponentQuadratureConfig(
            initial_panels=4, max_panels=8, nodes_per_panel=8, paths_per_node=4000
        )
        estimate = InversionService.inspected_exponent_estimate(
            sn_model, 1.0, 1.0, 1.0, seed=13, qcfg=qcfg
        )
        closed = -math.log(
            TransformService.lst_inspected_max(sn_model, InspectionSchemeFactory(), 1.0)
        )
        assert abs(estimate.estimate - closed) <= 4 * estimate.stderr

    def test_threads_do_not_change_result(self, sp_model):
        """Test the estimate is identical for any worker count."""
        qcfg = ExponentQuadratureConfig(initial_panels=2, max_panels=2, paths_per_node=500)
        one = InversionService.inspected_exponent_estimate(sp_model, 1.0, 1.0, 1.0, 5, qcfg, threads=1)
        four = InversionService.inspected_exponent_estimate(sp_model, 1.0, 1.0, 1.0, 5, qcfg, threads=4)
        assert one == four

    @pytest.mark.slow
    def test_acceptance(self, sp_model):
        """Test the default effort lands within three standard errors."""
        estimate = InversionService.inspected_exponent_estimate(sp_model, 1.0, 1.0, 1.0, seed=2024)
        assert abs(estimate.estimate - 0.0472297) <= 3 * estimate.stderr
