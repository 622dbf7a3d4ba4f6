"""
Evolution matrices of the continuous-time models.

    P_t = exp(e^{i xi} * t * (P - I_n)),   xi in [0, pi/2], t >= 0

xi = 0 is the classical (CTRW) evolution, xi = pi/2 the quantum (CTQW) one.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.walkzeta.errors import ParameterError, SymmetryRequiredError, UnsupportedError
from src.walkzeta.linalg.dense import expm
from src.walkzeta.spectra.graphs import TransitionMatrix
from src.walkzeta.spectra.spectrum import Spectrum

XI_CLASSICAL = 0.0
XI_QUANTUM = math.pi / 2


@dataclass(frozen=True)
class EvolutionParams:
    """Interpolation angle xi (radians) and time t."""
    xi: float
    t: float

    def __post_init__(self):
        xi, t = float(self.xi), float(self.t)
        if not (math.isfinite(xi) and math.isfinite(t)):
            raise ParameterError(f"xi and t must be finite, got xi={self.xi!r}, t={self.t!r}")
        if xi < 0 or xi > XI_QUANTUM:
            raise ParameterError(f"xi must lie in [0, pi/2], got {xi!r}")
        if t < 0:
            raise ParameterError(f"t must be >= 0, got {t!r}")
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "t", t)

    @classmethod
    def classical(cls, t: float) -> "EvolutionParams":
        return cls(XI_CLASSICAL, t)

    @classmethod
    def quantum(cls, t: float) -> "EvolutionParams":
        return cls(XI_QUANTUM, t)

    @property
    def is_classical(self) -> bool:
        return self.xi == XI_CLASSICAL

    @property
    def is_quantum(self) -> bool:
        return self.xi == XI_QUANTUM

    @property
    def phase(self) -> complex:
        """e^{i xi}, exact at both endpoints."""
        if self.is_classical:
            return complex(1.0)
        if self.is_quantum:
            return complex(0.0, 1.0)
        return cmath.exp(1j * self.xi)


def evolution_matrix(p: TransitionMatrix, params: EvolutionParams) -> np.ndarray:
    """
    Returns exp(e^{i xi} t (P - I)).

    Raises:
        SymmetryRequiredError: If xi > 0 and P is not symmetric.
    """
    if params.xi > 0 and not p.is_symmetric:
        raise SymmetryRequiredError(
            f"xi = {params.xi:g} > 0 requires a symmetric transition matrix"
        )
    n = p.n
    if params.t == 0:
        return np.eye(n, dtype=complex)
    generator = params.phase * params.t * (np.asarray(p.entries, dtype=complex) - np.eye(n))
    return expm(generator)


def evolution_radius(spectrum: Spectrum, params: EvolutionParams) -> float:
    """max_j |exp(e^{i xi} t (lambda_j - 1))|"""
    exponents = params.phase * params.t * (spectrum.values - 1.0)
    return float(np.max(np.exp(exponents.real)))


def max_abs_eigenvalue_bound(
    p: TransitionMatrix,
    params: EvolutionParams,
    spectrum: Optional[Spectrum] = None,
) -> float:
    """
    Spectral radius of the evolution matrix, which fixes the validity disk
    |u| < 1/rho of the zeta series.

    With a spectrum supplied (e.g. the torus closed form) rho is evaluated
    from it. Otherwise rho = 1 follows from stochasticity whenever every
    eigenvalue has real part <= 1 and lambda = 1 occurs: for symmetric P at
    any xi, and for any P at xi = 0.

    Raises:
        UnsupportedError: Non-symmetric P with xi > 0 and no spectrum.
    """
    if spectrum is not None:
        return evolution_radius(spectrum, params)
    if p.is_symmetric or params.is_classical or params.t == 0:
        return 1.0
    raise UnsupportedError(
        "Spectral radius of a non-symmetric matrix at xi > 0 needs a closed-form spectrum"
    )
