"""
Zeta functions and log-series coefficients on a general graph.

For an evolution matrix M with eigenvalues mu_j,

    zeta(u)^{-1} = det(I_n - u M)^{1/n}
                 = exp[(1/n) sum_j Log(1 - u mu_j)]
    C_r          = (1/n) sum_j mu_j^r

with mu_j = exp(e^{i xi} t (lambda_j - 1)) for the continuous-time model
and mu_j = lambda_j for the discrete-time one. The n-th root of the
determinant is never taken: the determinant path is compared at the n-th
power.
"""
import numpy as np

from src.walkzeta.linalg.dense import lu_determinant
from src.walkzeta.linalg.evolution import (
    EvolutionParams,
    evolution_matrix,
    evolution_radius,
    max_abs_eigenvalue_bound,
)
from src.walkzeta.spectra.graphs import TransitionMatrix
from src.walkzeta.spectra.spectrum import Spectrum
from src.walkzeta.zeta.values import CoeffValue, ZetaValue, check_radius, validate_index


def ctm_eigenvalues(s: Spectrum, params: EvolutionParams) -> np.ndarray:
    """mu_j = exp(e^{i xi} t (lambda_j - 1))"""
    return np.exp(params.phase * params.t * (s.array - 1.0))


def _log_mean(mu: np.ndarray, u: complex) -> complex:
    return complex(np.mean(np.log(1.0 - u * mu)))


def ctm_zeta_inverse_spectral(s: Spectrum, params: EvolutionParams, u: complex) -> ZetaValue:
    """
    Raises:
        RadiusError: If |u| * rho >= 1.
    """
    u = check_radius(u, evolution_radius(s, params))
    return ZetaValue.from_log(_log_mean(ctm_eigenvalues(s, params), u))


def ctm_zeta_inverse_determinant(p: TransitionMatrix, params: EvolutionParams, u: complex) -> complex:
    """
    det(I_n - u P_t), the n-th power of zeta^{-1}.

    Raises:
        SymmetryRequiredError: As evolution_matrix.
        RadiusError: If |u| * rho >= 1.
    """
    u = check_radius(u, max_abs_eigenvalue_bound(p, params))
    m = evolution_matrix(p, params)
    return lu_determinant(np.eye(p.n, dtype=complex) - u * m)


def ctm_coeff(s: Spectrum, params: EvolutionParams, r: int) -> CoeffValue:
    r = validate_index(r)
    return CoeffValue(np.mean(np.exp(params.phase * r * params.t * (s.array - 1.0))))


def log_zeta_series(s: Spectrum, params: EvolutionParams, u: complex, terms: int = 60) -> complex:
    """
    sum_{r=1..terms} C_r u^r / r, the truncated series of log zeta; its
    negative approximates log_zeta_inverse inside the disk.
    """
    u = check_radius(u, evolution_radius(s, params))
    total = complex(0.0)
    for r in range(1, terms + 1):
        total += ctm_coeff(s, params, r).c * u ** r / r
    return total


def dtm_zeta_inverse(s: Spectrum, u: complex) -> ZetaValue:
    """
    Raises:
        RadiusError: If |u| * max_j |lambda_j| >= 1.
    """
    u = check_radius(u, s.radius)
    return ZetaValue.from_log(_log_mean(s.values, u))


def dtm_zeta_inverse_determinant(p: TransitionMatrix, u: complex) -> complex:
    """
    det(I_n - u P). Stochastic P has spectral radius 1.

    Raises:
        RadiusError: If |u| >= 1.
    """
    u = check_radius(u, 1.0)
    return lu_determinant(np.eye(p.n, dtype=complex) - u * np.asarray(p.entries, dtype=complex))


def dtm_coeff(s: Spectrum, r: int) -> CoeffValue:
    r = validate_index(r)
    return CoeffValue(np.mean(s.array ** r))
