"""
Value objects returned by the zeta engine.
"""
import cmath
from dataclasses import dataclass
from typing import Optional

from src.walkzeta.errors import ParameterError, RadiusError


@dataclass(frozen=True)
class ZetaQuery:
    """A series variable u and, where relevant, a coefficient index r."""
    u: complex
    r: int = 1

    def __post_init__(self):
        object.__setattr__(self, "u", complex(self.u))
        validate_index(self.r)


@dataclass(frozen=True)
class ZetaValue:
    """
    zeta^{-1} together with its logarithm. log_zeta_inverse is the
    normative quantity: (1/n) * sum_j Log(1 - u mu_j), principal branch
    termwise.
    """
    log_zeta_inverse: complex
    zeta_inverse: complex
    uncertainty: Optional[float] = None

    @classmethod
    def from_log(cls, log_zeta_inverse: complex, uncertainty: Optional[float] = None) -> "ZetaValue":
        log_zeta_inverse = complex(log_zeta_inverse)
        return cls(log_zeta_inverse, cmath.exp(log_zeta_inverse), uncertainty)

    def power(self, n: int) -> complex:
        """(zeta^{-1})^n = exp(n * log zeta^{-1}), comparable with det(I - uM)."""
        return cmath.exp(n * self.log_zeta_inverse)


@dataclass(frozen=True)
class CoeffValue:
    """A log-series coefficient C_r."""
    c: complex
    uncertainty: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))


def validate_index(r: int) -> int:
    if isinstance(r, bool) or int(r) != r or r < 1:
        raise ParameterError(f"Coefficient index r must be a positive integer, got {r!r}")
    return int(r)


def check_radius(u: complex, rho: float) -> complex:
    """
    Enforces |u| * rho < 1.

    Raises:
        RadiusError: Naming rho, when u lies outside the disk.
    """
    u = complex(u)
    if abs(u) * rho >= 1.0:
        raise RadiusError(u, rho)
    return u
