"""
Continuous-time walks on the integer line.

The fundamental solution of

    d psi / dt = e^{i xi} * (1/2) * Laplacian psi

started from a delta at the origin is the kernel

    g_{e^{i xi} t}(x) = exp(-e^{i xi} t) * I_x(e^{i xi} t)

which is the CTRW distribution e^{-t} I_x(t) at xi = 0 and, through
I_x(it) = i^x J_x(t), the CTQW amplitude at xi = pi/2. States are finitely
supported windows of complex values; evolution is convolution with a
truncated kernel.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from src.walkzeta.errors import EnvelopeError, ParameterError, TruncationError
from src.walkzeta.linalg.evolution import EvolutionParams
from src.walkzeta.special.bessel import bessel_i, bessel_j, damped_bessel_i_orders

logger = logging.getLogger(__name__)

MAX_TIME = 50.0
MAX_SITE = 512
RADIUS_CAP = 512
MIN_RADIUS = 16
KERNEL_TOL = 1e-12
PROBABILITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LatticeState:
    """
    Values on the sites offset, offset + 1, ..., offset + len(values) - 1;
    zero everywhere else. A `probability` state holds a distribution.
    """
    offset: int
    values: np.ndarray
    probability: bool = False

    def __post_init__(self):
        if isinstance(self.offset, bool) or int(self.offset) != self.offset:
            raise ParameterError(f"Offset must be an integer, got {self.offset!r}")
        arr = np.array(self.values, dtype=complex, copy=True).reshape(-1)
        if arr.size == 0:
            raise ParameterError("Lattice state needs at least one value")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("Lattice state has non-finite values")
        if self.probability:
            if np.any(arr.imag != 0) or np.any(arr.real < 0):
                raise ParameterError("Probability state must be real and nonnegative")
            total = float(np.sum(arr.real))
            if abs(total - 1.0) > PROBABILITY_TOL:
                raise ParameterError(f"Probability state sums to {total!r}, not 1")
        arr.setflags(write=False)
        object.__setattr__(self, "offset", int(self.offset))
        object.__setattr__(self, "values", arr)

    @classmethod
    def delta(cls, site: int = 0) -> "LatticeState":
        return cls(site, np.ones(1), probability=True)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.values.size)

    def value_at(self, x: int) -> complex:
        i = x - self.offset
        if 0 <= i < self.values.size:
            return complex(self.values[i])
        return complex(0.0)

    def total(self) -> complex:
        return complex(np.sum(self.values))

    def trimmed(self) -> "LatticeState":
        """Drops exact zeros from both ends of the window (keeps one value)."""
        nonzero = np.flatnonzero(self.values)
        if nonzero.size == 0:
            return LatticeState(self.offset, self.values[:1], self.probability)
        lo, hi = int(nonzero[0]), int(nonzero[-1])
        return LatticeState(self.offset + lo, self.values[lo:hi + 1], self.probability)


@dataclass(frozen=True, eq=False)
class Kernel:
    """g_{e^{i xi} t}(x) tabulated for |x| <= radius."""
    params: EvolutionParams
    radius: int
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=complex, copy=True).reshape(-1)
        if arr.size != 2 * self.radius + 1:
            raise ParameterError(
                f"Kernel of radius {self.radius} needs {2 * self.radius + 1} values, got {arr.size}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def value_at(self, x: int) -> complex:
        if abs(x) > self.radius:
            return complex(0.0)
        return complex(self.values[x + self.radius])

    def residual(self) -> float:
        return _kernel_residual(self.params, self.values)

    def as_state(self) -> LatticeState:
        if self.params.is_classical:
            return LatticeState(-self.radius, self.values.real, probability=True)
        return LatticeState(-self.radius, self.values)


def _check_time(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise ParameterError(f"t must be a finite number >= 0, got {t!r}")
    if t > MAX_TIME:
        raise EnvelopeError(f"t must be <= {MAX_TIME:g}, got {t:g}")
    return t


def _check_site(x: int) -> int:
    if isinstance(x, bool) or int(x) != x:
        raise ParameterError(f"Site must be an integer, got {x!r}")
    if abs(x) > MAX_SITE:
        raise EnvelopeError(f"|x| must be <= {MAX_SITE}, got {x}")
    return int(x)


def discrete_laplacian(state: LatticeState) -> LatticeState:
    """F(x - 1) + F(x + 1) - 2 F(x) on the window widened by one site each side."""
    padded = np.concatenate(([0.0], state.values, [0.0]))
    return LatticeState(state.offset - 1, np.convolve(padded, [1.0, -2.0, 1.0], mode="same"))


def _tabulate(params: EvolutionParams, radius: int) -> np.ndarray:
    """g(x) for x = -radius..radius, filled from x >= 0 by I_{-x} = I_x."""
    if params.t == 0:
        values = np.zeros(2 * radius + 1, dtype=complex)
        values[radius] = 1.0
        return values
    half = damped_bessel_i_orders(radius, params.phase * params.t)
    if params.is_classical:
        half = half.real.astype(complex)
    return np.concatenate((half[:0:-1], half))


def _kernel_residual(params: EvolutionParams, values: np.ndarray) -> float:
    mass = abs(1.0 - complex(np.sum(values)))
    if params.is_classical:
        return mass
    if params.is_quantum:
        return abs(1.0 - float(np.sum(np.abs(values) ** 2)))
    return max(mass, float(abs(values[0]) + abs(values[-1])))


def kernel(params: EvolutionParams, radius: Optional[int] = None) -> Kernel:
    """
    Tabulates the fundamental solution, doubling the radius until the
    normalization residual is at most 1e-12.

    Raises:
        EnvelopeError: If t > 50 or radius > 512.
        TruncationError: If the residual is not met at radius 512.
    """
    _check_time(params.t)
    if radius is None:
        radius = min(RADIUS_CAP, max(MIN_RADIUS, int(math.ceil(2 * params.t)) + MIN_RADIUS))
    if isinstance(radius, bool) or int(radius) != radius or radius < 1:
        raise ParameterError(f"Kernel radius must be a positive integer, got {radius!r}")
    radius = int(radius)
    if radius > RADIUS_CAP:
        raise EnvelopeError(f"Kernel radius must be <= {RADIUS_CAP}, got {radius}")

    while True:
        values = _tabulate(params, radius)
        residual = _kernel_residual(params, values)
        if residual <= KERNEL_TOL:
            return Kernel(params, radius, values)
        if radius >= RADIUS_CAP:
            raise TruncationError(
                f"Kernel residual {residual:.3e} above {KERNEL_TOL:g} at the radius cap {RADIUS_CAP}"
            )
        widened = min(RADIUS_CAP, 2 * radius)
        logger.debug(f"Kernel residual {residual:.3e} at radius {radius}; widening to {widened}")
        radius = widened


def evolve(
    initial: LatticeState,
    params: EvolutionParams,
    radius: Optional[int] = None,
) -> LatticeState:
    """
    psi(t) = g_{e^{i xi} t} * f. The result's window is the Minkowski sum
    of the two supports; a distribution stays flagged at xi = 0.
    """
    if params.t == 0:
        _check_time(params.t)
        return LatticeState(initial.offset, initial.values, initial.probability)
    k = kernel(params, radius)
    values = np.convolve(initial.values, k.values)
    probability = initial.probability and params.is_classical
    if probability:
        values = values.real
    return LatticeState(initial.offset - k.radius, values, probability)


def ctrw_pmf(t: float, x: int) -> float:
    """P(S_t = x) = e^{-t} I_x(t)."""
    t, x = _check_time(t), _check_site(x)
    if t == 0:
        return 1.0 if x == 0 else 0.0
    return max(0.0, math.exp(-t) * bessel_i(x, t).real)


def ctqw_pmf(t: float, x: int) -> float:
    """P(X_t = x) = J_x(t)^2."""
    t, x = _check_time(t), _check_site(x)
    if t == 0:
        return 1.0 if x == 0 else 0.0
    return bessel_j(x, t).real ** 2


def squared_modulus(state: LatticeState) -> LatticeState:
    """
    |psi|^2 as a distribution.

    Raises:
        ParameterError: If the squared moduli do not sum to 1 within 1e-10.
    """
    return LatticeState(state.offset, np.abs(state.values) ** 2, probability=True)


def expectation_solution(f: Union[LatticeState, Callable[[int], float]], t: float, x: int,
                         radius: Optional[int] = None) -> Union[float, complex]:
    """
    phi(t, x) = E[f(x + S_t)] = sum_y f(x + y) P(S_t = y).

    `f` is a finitely supported state or a callable on integers; the sum
    runs over the kernel window.
    """
    k = kernel(EvolutionParams.classical(t), radius)
    lookup = f.value_at if isinstance(f, LatticeState) else f
    ys = range(-k.radius, k.radius + 1)
    total = sum(complex(lookup(x + y)) * k.values[y + k.radius].real for y in ys)
    if isinstance(f, LatticeState) and not np.any(f.values.imag):
        return total.real
    return total


def _psi_at(xi: float, t: float, radius: int) -> np.ndarray:
    return _tabulate(EvolutionParams(xi, t), radius)


def pde_residual(params: EvolutionParams, t: float, h: float, radius: int = 64) -> float:
    """
    Central-difference residual of d psi / dt = e^{i xi} (1/2) Laplacian psi
    for the delta initial condition, maximized over sites |x| <= radius - 1,
    at time t = params.t.

    Raises:
        ParameterError: Unless 0 < h < t, or if t differs from params.t.
    """
    if t != params.t:
        raise ParameterError(f"Residual time t={t!r} does not match params.t={params.t!r}")
    if not (0 < h < t):
        raise ParameterError(f"Need 0 < h < t, got h={h!r}, t={t!r}")
    _check_time(t + h)
    if isinstance(radius, bool) or int(radius) != radius or not 2 <= radius <= RADIUS_CAP:
        raise ParameterError(f"Radius must be an integer in [2, {RADIUS_CAP}], got {radius!r}")

    later = _psi_at(params.xi, t + h, radius)
    earlier = _psi_at(params.xi, t - h, radius)
    now = _psi_at(params.xi, t, radius)

    dt = (later - earlier) / (2.0 * h)
    laplacian = now[:-2] + now[2:] - 2.0 * now[1:-1]
    rhs = params.phase * 0.5 * laplacian
    return float(np.max(np.abs(dt[1:-1] - rhs)))

