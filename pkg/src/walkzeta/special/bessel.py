"""
Integer-order Bessel functions of complex argument.

    I_a(z) = sum_k (z/2)^(2k+a) / (k! (a+k)!)
    J_a(z) = sum_k (-1)^k (z/2)^(2k+a) / (k! (a+k)!)

Only integer orders occur in the walk formulas, so the gamma function
reduces to factorials. The power series is summed directly where its terms
cannot cancel: |z| <= 2, or I on the real axis. Everywhere else I is
computed by backward recurrence from a high starting order, normalized by

    e^z = I_0(z) + 2 * sum_{k >= 1} I_k(z)

after folding the argument into Re z >= 0 with I_n(-z) = (-1)^n I_n(z),
and J comes from J_n(w) = i^n I_n(-i w). The recurrence yields the damped
values e^{-z} I_k(z) for every k up to the requested order at once.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from src.walkzeta.errors import EnvelopeError, ParameterError

MAX_ORDER = 1024
MAX_ARGUMENT = 100.0
EXACT_FACTORIAL_LIMIT = 20
SERIES_TOL = 1e-17
MAX_TERMS = 500
SERIES_RADIUS = 2.0
RESCALE = 1e250

Number = Union[int, float, complex]

_I_POWERS = (1, 1j, -1, -1j)


@dataclass(frozen=True)
class BesselOrder:
    alpha: int

    def __post_init__(self):
        if isinstance(self.alpha, bool) or int(self.alpha) != self.alpha:
            raise ParameterError(f"Bessel order must be an integer, got {self.alpha!r}")
        object.__setattr__(self, "alpha", int(self.alpha))
        if abs(self.alpha) > MAX_ORDER:
            raise EnvelopeError(f"|order| must be <= {MAX_ORDER}, got {self.alpha}")


def _check_argument(z: Number) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise EnvelopeError(f"Bessel argument must be finite, got {z!r}")
    if abs(z) > MAX_ARGUMENT:
        raise EnvelopeError(f"|z| must be <= {MAX_ARGUMENT:g}, got {abs(z):.6g}")
    return z


def _order(order: Union[BesselOrder, int]) -> BesselOrder:
    return order if isinstance(order, BesselOrder) else BesselOrder(order)


def _leading_term(n: int, half_z: complex) -> complex:
    """(z/2)^n / n!, in log space once n! leaves the exact range."""
    if n <= EXACT_FACTORIAL_LIMIT:
        return half_z ** n / math.factorial(n)
    return cmath.exp(n * cmath.log(half_z) - math.lgamma(n + 1))


def _series(n: int, z: complex, alternating: bool = False) -> complex:
    """I_n(z) for n >= 0 by the power series; J_n(z) when `alternating`."""
    if z == 0:
        return complex(1.0) if n == 0 else complex(0.0)

    half_z = z / 2
    ratio = half_z * half_z
    if alternating:
        ratio = -ratio
    term = _leading_term(n, half_z)
    real_parts = [term.real]
    imag_parts = [term.imag]
    running = term
    z_abs = abs(z)

    for k in range(1, MAX_TERMS):
        term = term * ratio / (k * (n + k))
        real_parts.append(term.real)
        imag_parts.append(term.imag)
        running += term
        if k >= z_abs and abs(term) <= SERIES_TOL * abs(running):
            break
        if term == 0:
            break

    return complex(math.fsum(real_parts), math.fsum(imag_parts))


def _series_is_stable(z: complex) -> bool:
    return z.imag == 0 or abs(z) <= SERIES_RADIUS


def _start_order(n_max: int, z: complex) -> int:
    reach = max(n_max, abs(z))
    return int(reach + 30 + 12 * math.sqrt(reach))


def _damped_recurrence(n_max: int, z: complex) -> np.ndarray:
    """
    e^{-z} I_k(z) for k = 0..n_max, Re z >= 0 and z != 0.

    Runs I_{k-1} = (2k / z) I_k + I_{k+1} downward from an order where I is
    negligible, rescaling whenever the iterate grows past RESCALE.
    """
    top = _start_order(n_max, z)
    two_over_z = 2.0 / z
    values = np.zeros(n_max + 1, dtype=complex)

    ahead, current = 0j, 1.0 + 0j
    total = 0j
    for k in range(top, 0, -1):
        if k <= n_max:
            values[k] = current
        total += 2.0 * current
        ahead, current = current, k * two_over_z * current + ahead
        if abs(current) > RESCALE:
            ahead /= RESCALE
            current /= RESCALE
            total /= RESCALE
            values[k:] /= RESCALE

    values[0] = current
    total += current
    return values / total


def _damped_orders(n_max: int, z: complex) -> np.ndarray:
    """e^{-z} I_k(z) for k = 0..n_max, any argument inside the envelope."""
    if _series_is_stable(z):
        damping = cmath.exp(-z)
        return np.array([damping * _series(k, z) for k in range(n_max + 1)], dtype=complex)
    if z.real >= 0:
        return _damped_recurrence(n_max, z)
    # e^{-z} I_k(z) = (-1)^k e^{-2z} * e^{z} I_k(-z)
    folded = _damped_recurrence(n_max, -z)
    signs = np.where(np.arange(n_max + 1) % 2 == 0, 1.0, -1.0)
    return signs * cmath.exp(-2 * z) * folded


def _bessel_i_value(n: int, z: complex) -> complex:
    if _series_is_stable(z):
        return _series(n, z)
    if z.real >= 0:
        return complex(cmath.exp(z) * _damped_recurrence(n, z)[n])
    sign = -1.0 if n % 2 else 1.0
    return complex(sign * cmath.exp(-z) * _damped_recurrence(n, -z)[n])


def bessel_i(order: Union[BesselOrder, int], z: Number) -> complex:
    """
    Modified Bessel function of the first kind I_order(z), with
    I_{-n} = I_n for negative orders.

    Raises:
        EnvelopeError: |z| > 100 or |order| > 1024.
    """
    order = _order(order)
    z = _check_argument(z)
    return _bessel_i_value(abs(order.alpha), z)


def bessel_j(order: Union[BesselOrder, int], z: Number) -> complex:
    """
    Bessel function of the first kind J_order(z), with
    J_{-n} = (-1)^n J_n for negative orders.

    Raises:
        EnvelopeError: |z| > 100 or |order| > 1024.
    """
    order = _order(order)
    z = _check_argument(z)
    n = abs(order.alpha)
    if abs(z) <= SERIES_RADIUS:
        value = _series(n, z, alternating=True)
    else:
        value = _I_POWERS[n % 4] * _bessel_i_value(n, -1j * z)
        if z.imag == 0:
            value = complex(value.real)
    if order.alpha < 0 and n % 2 == 1:
        return -value
    return complex(value)


def damped_bessel_i(order: Union[BesselOrder, int], z: Number) -> complex:
    """e^{-z} I_order(z); stays in range where I_order(z) alone overflows."""
    order = _order(order)
    z = _check_argument(z)
    n = abs(order.alpha)
    return complex(_damped_orders(n, z)[n])


def damped_bessel_i_orders(n_max: int, z: Number) -> np.ndarray:
    """
    e^{-z} I_k(z) for k = 0..n_max in one pass.

    Raises:
        EnvelopeError: |z| > 100 or n_max > 1024.
    """
    n_max = _order(n_max).alpha
    if n_max < 0:
        raise ParameterError(f"Highest order must be >= 0, got {n_max}")
    z = _check_argument(z)
    return _damped_orders(n_max, z)
