"""
Zeta functions and coefficients on the torus T^d_N.

Everything here is a mean over the momentum grid k~ = 2*pi*k/N of a
function of lambda_k = (1/d) * sum_j cos(k~_j); no transition matrix is
built. The N -> infinity limits are the same means on a grid of side
`grid` (the periodic trapezoid rule on [0, 2*pi)^d), reported together
with the difference against a grid of half the side.
"""
import cmath
import logging
import math

import numpy as np

from src.walkzeta.errors import EnvelopeError, GridTooCoarseError, SizeError
from src.walkzeta.linalg.evolution import EvolutionParams
from src.walkzeta.spectra.graphs import TorusSpec
from src.walkzeta.spectra.spectrum import torus_eigenvalues
from src.walkzeta.special.bessel import MAX_ARGUMENT, damped_bessel_i
from src.walkzeta.zeta.values import CoeffValue, ZetaValue, check_radius, validate_index

logger = logging.getLogger(__name__)

MIN_LIMIT_GRID = 16
DEFAULT_LIMIT_GRID = 256
QUADRATURE_POINT_LIMIT = 2 ** 24
EXACT_BINOMIAL_LIMIT = 60


def _grid_spec(d: int, grid: int) -> TorusSpec:
    spec = TorusSpec(d, grid)
    if spec.vertex_count > QUADRATURE_POINT_LIMIT:
        raise SizeError(
            f"Quadrature grid {grid}^{d} has {spec.vertex_count} points "
            f"(limit {QUADRATURE_POINT_LIMIT}); lower --grid"
        )
    return spec


def _check_dimension(d: int) -> None:
    TorusSpec(d, 1)


def _check_limit_grid(grid: int) -> int:
    if isinstance(grid, bool) or int(grid) != grid:
        raise SizeError(f"Quadrature grid must be an integer, got {grid!r}")
    grid = int(grid)
    if grid < MIN_LIMIT_GRID:
        raise GridTooCoarseError(f"Quadrature grid must be >= {MIN_LIMIT_GRID}, got {grid}")
    return grid


def _ctm_exponents(lam: np.ndarray, params: EvolutionParams, scale: float = 1.0) -> np.ndarray:
    return params.phase * scale * params.t * (lam - 1.0)


def _ctm_log_mean(spec: TorusSpec, params: EvolutionParams, u: complex) -> complex:
    mu = np.exp(_ctm_exponents(torus_eigenvalues(spec), params))
    return complex(np.mean(np.log(1.0 - u * mu)))


def _dtm_log_mean(spec: TorusSpec, u: complex) -> complex:
    return complex(np.mean(np.log(1.0 - u * torus_eigenvalues(spec))))


# Continuous-time model

def torus_zeta_inverse_finite(spec: TorusSpec, params: EvolutionParams, u: complex) -> ZetaValue:
    """
    zeta^{-1} on T^d_N from the k-grid mean of Log(1 - u * G(k~)).

    Every torus eigenvalue satisfies lambda <= 1 with lambda = 1 at k = 0,
    and Re e^{i xi} >= 0, so the evolution radius is exactly 1.

    Raises:
        RadiusError: If |u| >= 1.
    """
    u = check_radius(u, 1.0)
    return ZetaValue.from_log(_ctm_log_mean(spec, params, u))


def torus_zeta_inverse_limit(
    d: int,
    params: EvolutionParams,
    u: complex,
    grid: int = DEFAULT_LIMIT_GRID,
) -> ZetaValue:
    """
    N -> infinity limit of zeta^{-1} by the periodic trapezoid rule.

    Returns:
        ZetaValue whose uncertainty is |log value(grid) - log value(grid // 2)|.

    Raises:
        GridTooCoarseError: If grid < 16.
        RadiusError: If |u| >= 1.
    """
    grid = _check_limit_grid(grid)
    u = check_radius(u, 1.0)
    fine = _ctm_log_mean(_grid_spec(d, grid), params, u)
    coarse = _ctm_log_mean(_grid_spec(d, grid // 2), params, u)
    logger.debug(f"zeta limit d={d} grid={grid}: two-grid difference {abs(fine - coarse):.3e}")
    return ZetaValue.from_log(fine, abs(fine - coarse))


def torus_coeff_finite(spec: TorusSpec, params: EvolutionParams, r: int) -> CoeffValue:
    """C_r on T^d_N: the k-grid mean of exp(e^{i xi} r t (lambda_k - 1))."""
    r = validate_index(r)
    return CoeffValue(np.mean(np.exp(_ctm_exponents(torus_eigenvalues(spec), params, r))))


def _separable_coeff(d: int, params: EvolutionParams, r: int, grid: int) -> complex:
    # exp(a * sum_j cos / d) factorizes over directions, so the d-fold
    # trapezoid is the d-th power of a one-dimensional one.
    a = params.phase * r * params.t
    cosines = np.cos(2.0 * np.pi * np.arange(grid) / grid)
    one_dim = complex(np.mean(np.exp(a * cosines / d)))
    return cmath.exp(-a) * one_dim ** d


def torus_coeff_limit_quadrature(
    d: int,
    params: EvolutionParams,
    r: int,
    grid: int = DEFAULT_LIMIT_GRID,
) -> CoeffValue:
    """
    N -> infinity limit of C_r by the periodic trapezoid rule, with the
    two-grid difference as uncertainty.

    Raises:
        GridTooCoarseError: If grid < 16.
    """
    r = validate_index(r)
    grid = _check_limit_grid(grid)
    _check_dimension(d)
    fine = _separable_coeff(d, params, r, grid)
    coarse = _separable_coeff(d, params, r, grid // 2)
    return CoeffValue(fine, abs(fine - coarse))


def torus_coeff_limit_bessel(d: int, params: EvolutionParams, r: int) -> CoeffValue:
    """
    Closed form of the limit coefficient:

        exp(-e^{i xi} r t) * I_0(e^{i xi} r t / d)^d

    Raises:
        EnvelopeError: If r * t > 100 * d.
    """
    r = validate_index(r)
    _check_dimension(d)
    if r * params.t > MAX_ARGUMENT * d:
        raise EnvelopeError(
            f"r * t = {r * params.t:g} exceeds the Bessel envelope {MAX_ARGUMENT * d:g} for d = {d}"
        )
    a = params.phase * r * params.t
    return CoeffValue(damped_bessel_i(0, a / d) ** d)


# Discrete-time model

def torus_dtm_zeta_inverse_finite(spec: TorusSpec, u: complex) -> ZetaValue:
    """
    Raises:
        RadiusError: If |u| >= 1.
    """
    u = check_radius(u, 1.0)
    return ZetaValue.from_log(_dtm_log_mean(spec, u))


def torus_dtm_zeta_inverse_limit(d: int, u: complex, grid: int = DEFAULT_LIMIT_GRID) -> ZetaValue:
    """
    Raises:
        GridTooCoarseError: If grid < 16.
        RadiusError: If |u| >= 1.
    """
    grid = _check_limit_grid(grid)
    u = check_radius(u, 1.0)
    fine = _dtm_log_mean(_grid_spec(d, grid), u)
    coarse = _dtm_log_mean(_grid_spec(d, grid // 2), u)
    return ZetaValue.from_log(fine, abs(fine - coarse))


def torus_dtm_coeff_finite(spec: TorusSpec, r: int) -> CoeffValue:
    """k-grid mean of lambda_k^r. Exact for the N -> infinity limit when N > r."""
    r = validate_index(r)
    return CoeffValue(np.mean(torus_eigenvalues(spec) ** r))


def _central_binomial_probability(r: int) -> float:
    """binom(r, r/2) / 2^r for even r."""
    if r <= EXACT_BINOMIAL_LIMIT:
        return math.comb(r, r // 2) / 2 ** r
    return math.exp(math.lgamma(r + 1) - 2.0 * math.lgamma(r // 2 + 1) - r * math.log(2.0))


def _dtrw_quadrature(d: int, r: int, grid: int) -> float:
    return float(np.mean(torus_eigenvalues(_grid_spec(d, grid)) ** r))


def dtrw_return_probability(d: int, r: int, grid: int = DEFAULT_LIMIT_GRID) -> float:
    """
    Probability that the simple random walk on Z^d started at the origin is
    back at the origin after r steps.

    d = 1 and d = 2 use the central binomial closed form (squared for d = 2);
    d >= 3 uses the grid mean of lambda^r, which is exact once grid > r.

    Raises:
        GridTooCoarseError: If d >= 3 and grid <= r.
    """
    r = validate_index(r)
    _check_dimension(d)
    if d <= 2:
        if r % 2:
            return 0.0
        one_dim = _central_binomial_probability(r)
        return one_dim if d == 1 else one_dim * one_dim
    if grid <= r:
        raise GridTooCoarseError(f"Quadrature grid must exceed r = {r} for d >= 3, got {grid}")
    return _dtrw_quadrature(d, r, int(grid))


def dtrw_return_estimate(d: int, r: int, grid: int = DEFAULT_LIMIT_GRID) -> CoeffValue:
    """
    dtrw_return_probability with an uncertainty: 0 for the closed forms,
    otherwise the difference against the coarser exact grid max(r + 1, grid // 2).
    """
    value = dtrw_return_probability(d, r, grid)
    if d <= 2:
        return CoeffValue(value, 0.0)
    coarse_grid = max(r + 1, grid // 2)
    if coarse_grid >= grid:
        return CoeffValue(value, 0.0)
    return CoeffValue(value, abs(value - _dtrw_quadrature(d, r, coarse_grid)))
