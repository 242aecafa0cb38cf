"""Claim-law transforms and Lévy exponents."""

import logging
import math

import numpy as np
from scipy import integrate, optimize, special, stats

from app.core.exceptions import DomainError
from app.levy_models import constants
from app.levy_models.exceptions import (
    HeavyTailRegimeError,
    InfiniteSupremumError,
    OrientationError,
    OutsideConvergenceRegionError,
    RootNotFoundError,
)
from app.levy_models.schemas import JumpLaw, LevyModel, ParetoLomaxLaw, RootSolveConfig

logger = logging.getLogger(__name__)

_MIN_RTOL = 4 * np.finfo(float).eps


def _prepare(alpha) -> tuple[np.ndarray, bool]:
    """Return alpha as a float or complex array and whether it was a scalar."""
    arr = np.asarray(alpha)
    if not np.iscomplexobj(arr):
        arr = arr.astype(float)
    return arr, arr.ndim == 0


def _finish(values, scalar: bool):
    values = np.asarray(values)
    return values.item() if scalar else values


def _check_order(order: int) -> None:
    if order not in (1, 2):
        raise DomainError(f"derivative and moment order must be 1 or 2, got {order}")


# ParetoLomax helpers. All work in the scaled variable y = x / s, c = alpha * s.


def _pareto_moment(shape: float, scale: float, order: int) -> float:
    if order == 1:
        return scale / (shape - 1)
    if shape <= 2:
        return math.inf
    return 2 * scale**2 / ((shape - 1) * (shape - 2))


def _pareto_quad(shape: float, c: complex, power: int = 0) -> complex:
    """∫_0^∞ y^power e^{-c y} a (1+y)^{-a-1} dy by adaptive quadrature."""

    def weight(y):
        return shape * y**power * (1 + y) ** (-shape - 1) * np.exp(-c.real * y)

    freq = c.imag
    if freq == 0:
        value, _ = integrate.quad(
            weight, 0, np.inf, epsrel=constants.PARETO_QUAD_EPSREL, limit=constants.PARETO_QUAD_LIMIT
        )
        return complex(value)
    # Fourier-weighted quadrature keeps the oscillatory part stable
    cos_part, _ = integrate.quad(weight, 0, np.inf, weight="cos", wvar=abs(freq), epsabs=1e-13)
    sin_part, _ = integrate.quad(weight, 0, np.inf, weight="sin", wvar=abs(freq), epsabs=1e-13)
    return complex(cos_part, -math.copysign(sin_part, freq))


def _pareto_expint(shape: int, c: complex) -> complex:
    """a e^c E_{a+1}(c) for integer a."""
    if c.imag == 0 and c.real > 0:
        return shape * math.exp(c.real) * special.expn(shape + 1, c.real)
    en = special.exp1(c)
    decay = np.exp(-c)
    for n in range(1, shape + 1):
        en = (decay - c * en) / n
    return complex(shape * np.exp(c) * en)


def _pareto_lst_scalar(shape: float, scale: float, alpha: complex) -> complex:
    c = complex(alpha) * scale
    if c == 0:
        return 1.0 + 0.0j
    if abs(c) > constants.PARETO_WATSON_THRESHOLD:
        return shape / c * (1 - (shape + 1) / c + (shape + 1) * (shape + 2) / c**2)
    if float(shape).is_integer() and abs(c) <= constants.PARETO_EXPINT_LIMIT:
        return _pareto_expint(int(shape), c)
    return _pareto_quad(shape, c)


def _pareto_derivative_scalar(shape: float, scale: float, alpha: complex, order: int) -> complex:
    if alpha == 0:
        return complex((-1) ** order * _pareto_moment(shape, scale, order))
    return (-scale) ** order * _pareto_quad(shape, complex(alpha) * scale, order)


_pareto_lst = np.vectorize(_pareto_lst_scalar, otypes=[complex])
_pareto_derivative = np.vectorize(_pareto_derivative_scalar, otypes=[complex])


class JumpLawService:
    """Operations on claim-size laws."""

    @staticmethod
    def is_heavy_tailed(law: JumpLaw) -> bool:
        return isinstance(law, ParetoLomaxLaw)

    @staticmethod
    def convergence_abscissa(law: JumpLaw) -> float:
        """Left end α_min of the region where b(α) is finite."""
        match law.kind:
            case "exponential" | "erlang":
                return -law.rate
            case "hyperexponential":
                return -min(law.rates)
            case "deterministic":
                return -math.inf
            case _:
                return 0.0

    @staticmethod
    def _check_region(law: JumpLaw, arr: np.ndarray) -> None:
        boundary = JumpLawService.convergence_abscissa(law)
        real = np.real(arr)
        if JumpLawService.is_heavy_tailed(law):
            bad = real < boundary
        else:
            bad = real <= boundary
        if np.any(bad):
            alpha = arr.flat[int(np.argmax(bad))]
            raise OutsideConvergenceRegionError(
                law.kind, alpha, boundary, strict=not JumpLawService.is_heavy_tailed(law)
            )

    @staticmethod
    def jump_lst(law: JumpLaw, alpha):
        """
        Laplace-Stieltjes transform b(α) = E e^{-αB}.

        Accepts real or complex scalars and arrays; real input gives real output.
        """
        arr, scalar = _prepare(alpha)
        JumpLawService._check_region(law, arr)
        match law.kind:
            case "exponential":
                values = law.rate / (law.rate + arr)
            case "erlang":
                values = (law.rate / (law.rate + arr)) ** law.shape
            case "hyperexponential":
                values = sum(w * m / (m + arr) for w, m in zip(law.weights, law.rates, strict=True))
            case "deterministic":
                values = np.exp(-arr * law.mass)
            case _:
                values = _pareto_lst(law.shape, law.scale, arr)
                if not np.iscomplexobj(arr):
                    values = values.real
        values = np.where(arr == 0, 1.0, values)
        return _finish(values, scalar)

    @staticmethod
    def jump_lst_derivative(law: JumpLaw, alpha, order: int = 1):
        """b'(α) = -E[B e^{-αB}] or b''(α) = E[B² e^{-αB}]."""
        _check_order(order)
        arr, scalar = _prepare(alpha)
        JumpLawService._check_region(law, arr)
        sign = (-1) ** order
        match law.kind:
            case "exponential":
                mu = law.rate
                values = sign * math.factorial(order) * mu / (mu + arr) ** (order + 1)
            case "erlang":
                m, mu = law.shape, law.rate
                rising = m if order == 1 else m * (m + 1)
                values = sign * rising * mu**m / (mu + arr) ** (m + order)
            case "hyperexponential":
                values = sum(
                    sign * math.factorial(order) * w * m / (m + arr) ** (order + 1)
                    for w, m in zip(law.weights, law.rates, strict=True)
                )
            case "deterministic":
                values = (-law.mass) ** order * np.exp(-arr * law.mass)
            case _:
                values = _pareto_derivative(law.shape, law.scale, arr, order)
                if not np.iscomplexobj(arr):
                    values = values.real
        return _finish(values, scalar)

    @staticmethod
    def jump_moment(law: JumpLaw, order: int = 1) -> float:
        """E B or E B²."""
        _check_order(order)
        match law.kind:
            case "exponential":
                return math.factorial(order) / law.rate**order
            case "erlang":
                rising = law.shape if order == 1 else law.shape * (law.shape + 1)
                return rising / law.rate**order
            case "hyperexponential":
                return math.fsum(
                    w * math.factorial(order) / m**order
                    for w, m in zip(law.weights, law.rates, strict=True)
                )
            case "deterministic":
                return law.mass**order
            case _:
                return _pareto_moment(law.shape, law.scale, order)

    @staticmethod
    def jump_ccdf(law: JumpLaw, u):
        """P(B > u)."""
        arr = np.asarray(u, dtype=float)
        x = np.maximum(arr, 0.0)
        match law.kind:
            case "exponential":
                values = np.exp(-law.rate * x)
            case "erlang":
                values = stats.gamma.sf(x, law.shape, scale=1 / law.rate)
            case "hyperexponential":
                values = sum(
                    w * np.exp(-m * x) for w, m in zip(law.weights, law.rates, strict=True)
                )
            case "deterministic":
                values = (x < law.mass).astype(float)
            case _:
                values = (1 + x / law.scale) ** (-law.shape)
        values = np.where(arr < 0, 1.0, values)
        return _finish(values, arr.ndim == 0)

    @staticmethod
    def residual_ccdf(law: JumpLaw, u):
        """P(B^res > u) = ∫_u^∞ P(B > y) dy / E B."""
        arr = np.asarray(u, dtype=float)
        x = np.maximum(arr, 0.0)
        match law.kind:
            case "exponential":
                values = np.exp(-law.rate * x)
            case "erlang":
                values = sum(
                    stats.gamma.sf(x, j, scale=1 / law.rate) for j in range(1, law.shape + 1)
                ) / law.shape
            case "hyperexponential":
                mass = [w / m for w, m in zip(law.weights, law.rates, strict=True)]
                values = sum(
                    p * np.exp(-m * x) for p, m in zip(mass, law.rates, strict=True)
                ) / math.fsum(mass)
            case "deterministic":
                values = np.maximum(0.0, 1 - x / law.mass)
            case _:
                values = (1 + x / law.scale) ** (1 - law.shape)
        values = np.where(arr < 0, 1.0, values)
        return _finish(values, arr.ndim == 0)

    @staticmethod
    def sample_residual_jumps(law: JumpLaw, rng: np.random.Generator, size: int) -> np.ndarray:
        """Exact draws from the stationary-excess law of B."""
        match law.kind:
            case "exponential":
                return rng.exponential(1 / law.rate, size)
            case "erlang":
                phases = rng.integers(1, law.shape + 1, size)
                return rng.gamma(phases, 1 / law.rate)
            case "hyperexponential":
                mass = np.asarray(law.weights) / np.asarray(law.rates)
                phase = rng.choice(len(law.rates), size=size, p=mass / mass.sum())
                return rng.exponential(size=size) / np.asarray(law.rates)[phase]
            case "deterministic":
                return rng.uniform(0.0, law.mass, size)
            case _:
                return rng.pareto(law.shape - 1, size) * law.scale

    @staticmethod
    def sample_jumps(law: JumpLaw, rng: np.random.Generator, size: int) -> np.ndarray:
        """Exact i.i.d. draws of B."""
        match law.kind:
            case "exponential":
                return rng.exponential(1 / law.rate, size)
            case "erlang":
                return rng.gamma(law.shape, 1 / law.rate, size)
            case "hyperexponential":
                phase = rng.choice(len(law.rates), size=size, p=np.asarray(law.weights))
                return rng.exponential(size=size) / np.asarray(law.rates)[phase]
            case "deterministic":
                return np.full(size, law.mass)
            case _:
                # numpy's pareto draws the Lomax law with unit scale
                return rng.pareto(law.shape, size) * law.scale


class LevyModelService:
    """Exponents, right-inverses and the adjustment coefficient."""

    @staticmethod
    def laplace_exponent(model: LevyModel, alpha):
        """
        φ(α) for spectrally positive models, Φ(α) otherwise.

        Both compound-Poisson kinds evaluate rα - λ(1 - b(α)); the Brownian kind
        evaluates its cumulant μ_B α + σ² α² / 2.
        """
        arr, scalar = _prepare(alpha)
        if model.is_compound_poisson:
            b = np.asarray(JumpLawService.jump_lst(model.claims, arr))
            values = model.premium_rate * arr - model.arrival_rate * (1 - b)
        else:
            values = model.drift * arr + 0.5 * model.variance * arr**2
        return _finish(values, scalar)

    @staticmethod
    def exponent_derivative(model: LevyModel, alpha, order: int = 1):
        """First or second derivative of the exponent."""
        _check_order(order)
        arr, scalar = _prepare(alpha)
        if model.is_compound_poisson:
            db = np.asarray(JumpLawService.jump_lst_derivative(model.claims, arr, order))
            values = model.arrival_rate * db
            if order == 1:
                values = model.premium_rate + values
        elif order == 1:
            values = model.drift + model.variance * arr
        else:
            values = np.full_like(arr, model.variance)
        return _finish(values, scalar)

    @staticmethod
    def safety_loading(model: LevyModel) -> float:
        """Exponent slope at zero: r - λ E B, or μ_B for the Brownian kind."""
        if model.is_compound_poisson:
            return model.premium_rate - model.arrival_rate * JumpLawService.jump_moment(
                model.claims, 1
            )
        return model.drift

    @staticmethod
    def has_finite_supremum(model: LevyModel) -> bool:
        """Whether the all-time maximum is finite, i.e. β = 0 is admissible."""
        loading = LevyModelService.safety_loading(model)
        if model.is_spectrally_positive:
            return loading > 0
        return loading < 0

    @staticmethod
    def require_finite_supremum(model: LevyModel) -> None:
        if not LevyModelService.has_finite_supremum(model):
            condition = (
                "positive safety loading r - λE[B] > 0"
                if model.is_spectrally_positive
                else "negative drift of the cumulant"
            )
            raise InfiniteSupremumError(condition)

    @staticmethod
    def _expand_bracket(func, lo: float, hi: float) -> float:
        """Double hi until func(hi) >= 0."""
        for _ in range(constants.BRACKET_MAX_DOUBLINGS):
            if func(hi) >= 0:
                return hi
            logger.debug(f"Bracket [{lo}, {hi}] too narrow, doubling")
            hi *= 2
        raise RootNotFoundError("could not bracket the root", bracket=(lo, hi))

    @staticmethod
    def _solve(func, derivative, lo: float, hi: float, cfg: RootSolveConfig) -> float:
        """Brent's method on [lo, hi] polished by in-bracket Newton steps."""
        try:
            root = optimize.brentq(
                func,
                lo,
                hi,
                xtol=cfg.abs_tol,
                rtol=max(cfg.rel_tol, _MIN_RTOL),
                maxiter=cfg.max_iter,
            )
        except (RuntimeError, ValueError) as exc:
            raise RootNotFoundError(f"root solve failed: {exc}", bracket=(lo, hi)) from exc

        residual = func(root)
        for _ in range(constants.NEWTON_POLISH_STEPS):
            slope = derivative(root)
            if residual == 0 or slope == 0 or not math.isfinite(slope):
                break
            candidate = root - residual / slope
            if not lo <= candidate <= hi:
                break
            candidate_residual = func(candidate)
            if abs(candidate_residual) >= abs(residual):
                break
            logger.debug(f"Newton polish {root!r} -> {candidate!r}")
            root, residual = candidate, candidate_residual
        return root

    @staticmethod
    def exponent_inverse(model: LevyModel, beta: float, cfg: RootSolveConfig | None = None) -> float:
        """
        Right-inverse ψ(β) (Ψ(β) for cumulant-based models).

        Returns the root of exponent(α) = β on the branch α >= argmin of the exponent.
        """
        cfg = cfg or RootSolveConfig()
        if beta < 0 or not math.isfinite(beta):
            raise DomainError(f"right-inverse needs a finite beta >= 0, got {beta}")
        if beta == 0:
            LevyModelService.require_finite_supremum(model)
            if model.is_spectrally_positive:
                return 0.0

        if not model.is_compound_poisson:
            mu, var = model.drift, model.variance
            return (-mu + math.sqrt(mu * mu + 2 * var * beta)) / var

        def excess(a: float) -> float:
            return float(LevyModelService.laplace_exponent(model, a)) - beta

        def slope(a: float) -> float:
            return float(LevyModelService.exponent_derivative(model, a, 1))

        hi = (beta + model.arrival_rate) / model.premium_rate
        lo = 0.0
        hi = LevyModelService._expand_bracket(excess, lo, hi)
        if beta == 0:
            # Skip the trivial root at zero
            res = optimize.minimize_scalar(
                excess, bounds=(0.0, hi), method="bounded", options={"xatol": cfg.abs_tol}
            )
            lo = float(res.x)
            if excess(lo) >= 0:
                raise RootNotFoundError("could not separate the nonzero root from 0", (lo, hi))
        return LevyModelService._solve(excess, slope, lo, hi, cfg)

    @staticmethod
    def adjustment_coefficient(model: LevyModel, cfg: RootSolveConfig | None = None) -> float:
        """The positive root θ* of φ(-θ) = 0."""
        cfg = cfg or RootSolveConfig()
        if not (model.is_spectrally_positive and model.is_compound_poisson):
            raise OrientationError(
                "adjustment_coefficient", model.orientation.value, "spectrally positive"
            )
        if JumpLawService.is_heavy_tailed(model.claims):
            raise HeavyTailRegimeError("adjustment_coefficient", model.claims.kind)
        LevyModelService.require_finite_supremum(model)

        def tilted(theta: float) -> float:
            return float(LevyModelService.laplace_exponent(model, -theta))

        def tilted_slope(theta: float) -> float:
            return -float(LevyModelService.exponent_derivative(model, -theta, 1))

        abscissa = -JumpLawService.convergence_abscissa(model.claims)
        if math.isinf(abscissa):
            hi = LevyModelService._expand_bracket(tilted, 0.0, 1.0)
        else:
            for k in range(1, constants.BRACKET_MAX_DOUBLINGS):
                hi = abscissa * (1 - 2.0**-k)
                if hi == abscissa:
                    raise RootNotFoundError("no root below the convergence abscissa", (0.0, hi))
                if tilted(hi) > 0:
                    break
                logger.debug(f"Moving upper bracket towards abscissa: {hi}")
            if not tilted(hi) > 0:
                raise RootNotFoundError("no root below the convergence abscissa", (0.0, hi))
        res = optimize.minimize_scalar(
            tilted, bounds=(0.0, hi), method="bounded", options={"xatol": cfg.abs_tol}
        )
        lo = float(res.x)
        if tilted(lo) >= 0:
            raise RootNotFoundError("exponent has no negative dip on the tilted axis", (lo, hi))
        return LevyModelService._solve(tilted, tilted_slope, lo, hi, cfg)
