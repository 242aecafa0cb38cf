"""Tests for claim laws, exponents and their inverses."""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import integrate, stats

from app.core.exceptions import DomainError
from app.levy_models import (
    DeterministicLaw,
    ExponentialLaw,
    JumpLawService,
    LevyModel,
    LevyModelService,
    ParetoLomaxLaw,
)
from app.levy_models.exceptions import (
    HeavyTailRegimeError,
    InfiniteSupremumError,
    OrientationError,
    OutsideConvergenceRegionError,
)
from app.mc_engine import derive_generator
from tests.factories import (
    DeterministicLawFactory,
    ErlangLawFactory,
    ExponentialLawFactory,
    HyperexponentialLawFactory,
    LevyModelFactory,
    ParetoLomaxLawFactory,
)

PSI_1 = (0.5 + math.sqrt(4.25)) / 2
PSI_2 = (1.5 + math.sqrt(10.25)) / 2

LAW_FACTORIES = [
    ExponentialLawFactory,
    ErlangLawFactory,
    HyperexponentialLawFactory,
    ParetoLomaxLawFactory,
    DeterministicLawFactory,
]


def pareto_lst_by_quad(shape: float, alpha: complex) -> complex:
    """Direct quadrature of E e^{-αB} for ParetoLomax(shape, 1)."""

    def density(y):
        return shape * (1 + y) ** (-shape - 1)

    real, _ = integrate.quad(
        lambda y: density(y) * math.exp(-alpha.real * y) * math.cos(alpha.imag * y), 0, np.inf
    )
    imag, _ = integrate.quad(
        lambda y: -density(y) * math.exp(-alpha.real * y) * math.sin(alpha.imag * y), 0, np.inf
    )
    return complex(real, imag)


class TestLawSchemas:
    """Test claim-law and model validation."""

    def test_hyperexponential_weights_must_sum_to_one(self):
        """Test mixture weights are validated."""
        with pytest.raises(ValidationError):
            HyperexponentialLawFactory(weights=(0.5, 0.6))

    def test_pareto_needs_finite_mean(self):
        """Test ParetoLomax rejects shape <= 1."""
        with pytest.raises(ValidationError):
            ParetoLomaxLaw(shape=1.0, scale=1.0)

    def test_brownian_rejects_claims(self):
        """Test the Brownian kind takes no claim law."""
        with pytest.raises(ValidationError):
            LevyModel(
                orientation="brownian_drift",
                drift=-1.0,
                variance=1.0,
                claims=ExponentialLaw(rate=1.0),
            )

    def test_compound_poisson_needs_premium(self):
        """Test compound-Poisson models need r > 0."""
        with pytest.raises(ValidationError):
            LevyModelFactory(premium_rate=0.0)

    def test_claims_parse_by_kind(self):
        """Test the discriminated union picks the law from its kind."""
        model = LevyModel.model_validate(
            {
                "orientation": "spectrally_positive",
                "premium_rate": 1.0,
                "arrival_rate": 0.5,
                "claims": {"kind": "deterministic", "mass": 2.0},
            }
        )
        assert isinstance(model.claims, DeterministicLaw)
        assert model.is_compound_poisson
        assert model.is_spectrally_positive


class TestJumpLst:
    """Test claim-size transforms."""

    @pytest.mark.parametrize("factory", LAW_FACTORIES)
    def test_value_at_zero_is_one(self, factory):
        """Test b(0) = 1 for every law."""
        assert JumpLawService.jump_lst(factory(), 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_exponential_closed_form(self):
        """Test b(α) = μ/(μ+α)."""
        law = ExponentialLawFactory(rate=2.0)
        values = JumpLawService.jump_lst(law, np.array([0.5, 1.0, 3.0]))
        np.testing.assert_allclose(values, [0.8, 2 / 3, 0.4], rtol=1e-15)

    def test_complex_argument(self):
        """Test complex arguments give complex values."""
        value = JumpLawService.jump_lst(ExponentialLawFactory(), 1 + 1j)
        assert value == pytest.approx(1 / (2 + 1j))

    def test_negative_argument_inside_region(self):
        """Test b(-0.5) = 2 for Exp(1)."""
        assert JumpLawService.jump_lst(ExponentialLawFactory(), -0.5) == pytest.approx(2.0)

    def test_outside_region_raises(self):
        """Test α at or beyond -μ is rejected."""
        with pytest.raises(OutsideConvergenceRegionError):
            JumpLawService.jump_lst(ExponentialLawFactory(), -1.0)

    def test_pareto_rejects_negative_argument(self):
        """Test heavy tails admit no negative α."""
        with pytest.raises(OutsideConvergenceRegionError):
            JumpLawService.jump_lst(ParetoLomaxLawFactory(), -1e-3)

    @pytest.mark.parametrize("alpha", [0.1, 1.0, 5.0])
    def test_pareto_integer_shape_matches_quadrature(self, alpha):
        """Test the exponential-integral path against direct quadrature."""
        value = JumpLawService.jump_lst(ParetoLomaxLawFactory(), alpha)
        assert value == pytest.approx(pareto_lst_by_quad(2.0, complex(alpha)).real, rel=1e-8)

    def test_pareto_fractional_shape_matches_quadrature(self):
        """Test the adaptive-quadrature path."""
        value = JumpLawService.jump_lst(ParetoLomaxLawFactory(shape=2.5), 1.0)
        assert value == pytest.approx(pareto_lst_by_quad(2.5, 1 + 0j).real, rel=1e-8)

    @pytest.mark.parametrize("alpha", [1 + 1j, 0.5 - 2j])
    def test_pareto_complex_matches_quadrature(self, alpha):
        """Test complex arguments on the integer-shape path."""
        value = JumpLawService.jump_lst(ParetoLomaxLawFactory(), alpha)
        expected = pareto_lst_by_quad(2.0, alpha)
        assert value.real == pytest.approx(expected.real, abs=1e-8)
        assert value.imag == pytest.approx(expected.imag, abs=1e-8)

    def test_pareto_large_argument_expansion(self):
        """Test the large-argument expansion b(α) ≈ a/(αs)."""
        value = JumpLawService.jump_lst(ParetoLomaxLawFactory(), 2e4)
        assert value == pytest.approx(2 / 2e4, rel=1e-3)

    def test_deterministic(self):
        """Test b(α) = e^{-αd}."""
        assert JumpLawService.jump_lst(DeterministicLawFactory(mass=2.0), 0.5) == pytest.approx(
            math.exp(-1.0)
        )


class TestJumpMoments:
    """Test claim moments and transform derivatives."""

    @pytest.mark.parametrize(
        ("factory", "mean", "second"),
        [
            (ExponentialLawFactory, 1.0, 2.0),
            (ErlangLawFactory, 1.0, 1.5),
            (HyperexponentialLawFactory, 1.1, 0.4 * 2 / 0.25 + 0.6 * 2 / 4),
            (DeterministicLawFactory, 1.0, 1.0),
        ],
    )
    def test_moments(self, factory, mean, second):
        """Test E B and E B² per law."""
        law = factory()
        assert JumpLawService.jump_moment(law, 1) == pytest.approx(mean)
        assert JumpLawService.jump_moment(law, 2) == pytest.approx(second)

    def test_pareto_second_moment_infinite(self):
        """Test ParetoLomax(2, 1) has E B = 1 and E B² = ∞."""
        law = ParetoLomaxLawFactory()
        assert JumpLawService.jump_moment(law, 1) == pytest.approx(1.0)
        assert math.isinf(JumpLawService.jump_moment(law, 2))

    def test_bad_order(self):
        """Test only orders 1 and 2 are supported."""
        with pytest.raises(DomainError):
            JumpLawService.jump_moment(ExponentialLawFactory(), 3)

    @pytest.mark.parametrize("factory", [ExponentialLawFactory, ErlangLawFactory, HyperexponentialLawFactory])
    def test_derivative_at_zero_is_minus_mean(self, factory):
        """Test b'(0) = -E B."""
        law = factory()
        assert JumpLawService.jump_lst_derivative(law, 0.0, 1) == pytest.approx(
            -JumpLawService.jump_moment(law, 1)
        )

    @pytest.mark.parametrize("factory", LAW_FACTORIES)
    def test_derivative_matches_finite_difference(self, factory):
        """Test b'(α) against a central difference at α = 1."""
        law = factory()
        h = 1e-5
        numeric = (JumpLawService.jump_lst(law, 1 + h) - JumpLawService.jump_lst(law, 1 - h)) / (2 * h)
        assert JumpLawService.jump_lst_derivative(law, 1.0, 1) == pytest.approx(numeric, rel=1e-6)


class TestTails:
    """Test claim and residual tails."""

    def test_pareto_residual_tail(self):
        """Test P(B^res > 9) = 1/(1+9) for ParetoLomax(2, 1)."""
        assert JumpLawService.residual_ccdf(ParetoLomaxLawFactory(), 9.0) == pytest.approx(0.1)

    def test_pareto_tail(self):
        """Test P(B > 1) = 2^{-2}."""
        assert JumpLawService.jump_ccdf(ParetoLomaxLawFactory(), 1.0) == pytest.approx(0.25)

    def test_deterministic_tails(self):
        """Test the point-mass tail and its uniform residual."""
        law = DeterministicLawFactory(mass=2.0)
        np.testing.assert_allclose(JumpLawService.jump_ccdf(law, [1.0, 2.0, 3.0]), [1.0, 0.0, 0.0])
        assert JumpLawService.residual_ccdf(law, 0.5) == pytest.approx(0.75)

    def test_negative_levels(self):
        """Test tails equal 1 below zero."""
        assert JumpLawService.jump_ccdf(ExponentialLawFactory(), -1.0) == 1.0

    @pytest.mark.parametrize("factory", [ErlangLawFactory, HyperexponentialLawFactory])
    def test_residual_tail_matches_integral(self, factory):
        """Test the residual tail against ∫_u^∞ P(B > y) dy / E B."""
        law = factory()
        u = 1.5
        integral, _ = integrate.quad(lambda y: JumpLawService.jump_ccdf(law, y), u, np.inf)
        expected = integral / JumpLawService.jump_moment(law, 1)
        assert JumpLawService.residual_ccdf(law, u) == pytest.approx(expected, rel=1e-8)


class TestSamplers:
    """Test exact claim samplers."""

    @pytest.mark.parametrize("factory", [ExponentialLawFactory, ErlangLawFactory, HyperexponentialLawFactory])
    def test_sample_mean(self, factory):
        """Test sample means within four standard errors."""
        law = factory()
        draws = JumpLawService.sample_jumps(law, derive_generator(7, 1), 100_000)
        stderr = draws.std(ddof=1) / math.sqrt(draws.size)
        assert abs(draws.mean() - JumpLawService.jump_moment(law, 1)) <= 4 * stderr

    def test_pareto_sample_tail(self):
        """Test the Lomax sampler tail at u = 1."""
        draws = JumpLawService.sample_jumps(ParetoLomaxLawFactory(), derive_generator(7, 2), 100_000)
        share = np.mean(draws > 1.0)
        assert abs(share - 0.25) <= 4 * math.sqrt(0.25 * 0.75 / draws.size)

    @pytest.mark.parametrize("factory", [ErlangLawFactory, HyperexponentialLawFactory, DeterministicLawFactory])
    def test_residual_sample_tail(self, factory):
        """Test residual draws against the residual tail."""
        law = factory()
        draws = JumpLawService.sample_residual_jumps(law, derive_generator(7, 3), 100_000)
        target = JumpLawService.residual_ccdf(law, 0.5)
        share = np.mean(draws > 0.5)
        assert abs(share - target) <= 4 * math.sqrt(target * (1 - target) / draws.size)

    def test_erlang_sampler_matches_gamma(self):
        """Test Erlang draws with a KS test against the gamma law."""
        law = ErlangLawFactory()
        draws = JumpLawService.sample_jumps(law, derive_generator(7, 4), 20_000)
        result = stats.kstest(draws, stats.gamma(law.shape, scale=1 / law.rate).cdf)
        assert result.pvalue > 1e-3


class TestLaplaceExponent:
    """Test exponents and their derivatives."""

    def test_spectrally_positive_value(self, sp_model):
        """Test φ(1) = 1 - 0.5 · 1/2 = 0.75."""
        assert LevyModelService.laplace_exponent(sp_model, 1.0) == pytest.approx(0.75)

    def test_brownian_cumulant(self, brownian_model):
        """Test Φ(α) = -α + α²/2."""
        assert LevyModelService.laplace_exponent(brownian_model, 2.0) == pytest.approx(0.0)
        assert LevyModelService.laplace_exponent(brownian_model, 3.0) == pytest.approx(1.5)

    def test_safety_loading(self, sp_model, brownian_model):
        """Test φ'(0) = r - λE B and μ_B."""
        assert LevyModelService.safety_loading(sp_model) == pytest.approx(0.5)
        assert LevyModelService.safety_loading(brownian_model) == -1.0
        assert LevyModelService.exponent_derivative(sp_model, 0.0, 1) == pytest.approx(0.5)

    def test_second_derivative(self, sp_model, brownian_model):
        """Test φ''(0) = λE B² and σ²."""
        assert LevyModelService.exponent_derivative(sp_model, 0.0, 2) == pytest.approx(1.0)
        assert LevyModelService.exponent_derivative(brownian_model, 0.3, 2) == pytest.approx(1.0)

    def test_finite_supremum_rule(self, sp_model, sn_model, brownian_model):
        """Test β = 0 admission per orientation."""
        assert LevyModelService.has_finite_supremum(sp_model)
        assert not LevyModelService.has_finite_supremum(sn_model)
        assert LevyModelService.has_finite_supremum(brownian_model)


class TestExponentInverse:
    """Test the right-inverse ψ."""

    def test_canonical_values(self, sp_model):
        """Test ψ(1) and ψ(2) of the canonical model."""
        assert LevyModelService.exponent_inverse(sp_model, 1.0) == pytest.approx(PSI_1, abs=1e-10)
        assert LevyModelService.exponent_inverse(sp_model, 2.0) == pytest.approx(PSI_2, abs=1e-10)
        assert PSI_1 == pytest.approx(1.2807764, abs=1e-7)
        assert PSI_2 == pytest.approx(2.3507811, abs=1e-7)

    @pytest.mark.parametrize("model_name", ["sp_model", "sn_model", "brownian_model"])
    def test_round_trip(self, request, model_name):
        """Test |φ(ψ(β)) - β| <= 1e-10 max(1, β) on a log grid."""
        model = request.getfixturevalue(model_name)
        for beta in np.logspace(-3, 3, 40):
            alpha = LevyModelService.exponent_inverse(model, float(beta))
            residual = abs(LevyModelService.laplace_exponent(model, alpha) - beta)
            assert residual <= 1e-10 * max(1.0, beta)

    @pytest.mark.parametrize(
        "claims",
        [ErlangLawFactory, HyperexponentialLawFactory, DeterministicLawFactory, ParetoLomaxLawFactory],
    )
    def test_round_trip_other_laws(self, claims):
        """Test the round trip for every claim law."""
        model = LevyModelFactory(claims=claims())
        for beta in (0.01, 1.0, 50.0):
            alpha = LevyModelService.exponent_inverse(model, beta)
            assert LevyModelService.laplace_exponent(model, alpha) == pytest.approx(beta, rel=1e-10)

    def test_increasing(self, sp_model):
        """Test ψ is increasing."""
        values = [LevyModelService.exponent_inverse(sp_model, b) for b in (0.1, 1.0, 10.0)]
        assert values == sorted(values)

    def test_zero_for_positive_loading(self, sp_model):
        """Test ψ(0) = 0 under positive loading."""
        assert LevyModelService.exponent_inverse(sp_model, 0.0) == 0.0

    def test_zero_without_loading_raises(self):
        """Test β = 0 with λE B >= r."""
        with pytest.raises(InfiniteSupremumError):
            LevyModelService.exponent_inverse(LevyModelFactory(arrival_rate=1.5), 0.0)

    def test_brownian_zero(self, brownian_model):
        """Test Ψ(0) = -2μ_B/σ² = 2."""
        assert LevyModelService.exponent_inverse(brownian_model, 0.0) == pytest.approx(2.0)

    def test_spectrally_negative_nonzero_root(self):
        """Test Ψ(0) = 1 for SN(1, 2, Exp(1)), whose cumulant is α(α-1)/(1+α)."""
        model = LevyModel.spectrally_negative(1.0, 2.0, ExponentialLaw(rate=1.0))
        assert LevyModelService.exponent_inverse(model, 0.0) == pytest.approx(1.0, abs=1e-10)

    def test_negative_beta(self, sp_model):
        """Test β < 0 is outside the domain."""
        with pytest.raises(DomainError):
            LevyModelService.exponent_inverse(sp_model, -1.0)


class TestAdjustmentCoefficient:
    """Test the Cramér-Lundberg exponent θ*."""

    def test_canonical(self, sp_model):
        """Test θ* = μ - λ/r = 0.5."""
        assert LevyModelService.adjustment_coefficient(sp_model) == pytest.approx(0.5, abs=1e-10)

    def test_near_critical(self):
        """Test θ* = 0.1 for SP(1, 0.9, Exp(1))."""
        model = LevyModelFactory(arrival_rate=0.9)
        assert LevyModelService.adjustment_coefficient(model) == pytest.approx(0.1, abs=1e-10)

    @pytest.mark.parametrize(
        "claims", [ErlangLawFactory, HyperexponentialLawFactory, DeterministicLawFactory]
    )
    def test_root_of_tilted_exponent(self, claims):
        """Test φ(-θ*) = 0 with θ* > 0."""
        model = LevyModelFactory(claims=claims())
        theta = LevyModelService.adjustment_coefficient(model)
        assert theta > 0
        assert LevyModelService.laplace_exponent(model, -theta) == pytest.approx(0.0, abs=1e-10)

    def test_heavy_tails_raise(self, pareto_model):
        """Test ParetoLomax claims have no adjustment coefficient."""
        with pytest.raises(HeavyTailRegimeError):
            LevyModelService.adjustment_coefficient(pareto_model)

    def test_orientation(self, sn_model):
        """Test SN models are rejected."""
        with pytest.raises(OrientationError):
            LevyModelService.adjustment_coefficient(sn_model)

    def test_no_loading(self):
        """Test λE B >= r is rejected."""
        with pytest.raises(InfiniteSupremumError):
            LevyModelService.adjustment_coefficient(LevyModelFactory(arrival_rate=1.0))
