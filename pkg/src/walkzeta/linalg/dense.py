"""
Dense complex matrix kernels: determinant, exponential, power traces.
"""
import math

import numpy as np

from src.walkzeta.errors import ParameterError, SizeError

# Taylor core of the exponential
EXPM_SCALED_NORM = 0.5
EXPM_TERM_TOL = 1e-18
EXPM_MAX_TERMS = 30

POWER_REPEAT_LIMIT = 8


def as_complex_matrix(m) -> np.ndarray:
    """
    Returns a complex128 copy of a square, finite matrix.

    Raises:
        SizeError: If the input is not a nonempty square matrix.
        ParameterError: If any entry is NaN or infinite.
    """
    arr = np.array(m, dtype=complex, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise SizeError(f"Expected a nonempty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("Matrix has non-finite entries")
    return arr


def inf_norm(a: np.ndarray) -> float:
    """Maximum absolute row sum."""
    return float(np.max(np.sum(np.abs(a), axis=1)))


def lu_determinant(m) -> complex:
    """
    Determinant by LU factorization with partial pivoting.
    A singular matrix (zero pivot column) gives 0.
    """
    lu = as_complex_matrix(m)
    n = lu.shape[0]
    det = complex(1.0)

    for k in range(n):
        pivot = k + int(np.argmax(np.abs(lu[k:, k])))
        if lu[pivot, k] == 0:
            return complex(0.0)
        if pivot != k:
            lu[[k, pivot], k:] = lu[[pivot, k], k:]
            det = -det
        det *= lu[k, k]
        if k + 1 < n:
            factors = lu[k + 1:, k] / lu[k, k]
            lu[k + 1:, k + 1:] -= np.outer(factors, lu[k, k + 1:])

    return complex(det)


def expm(a) -> np.ndarray:
    """
    Matrix exponential by scaling and squaring around a truncated Taylor
    series.

    The matrix is scaled by 2^-s so its infinity norm is at most 0.5; Taylor
    terms are summed until a term's norm drops below 1e-18 of the partial
    sum's norm (at most 30 terms); the result is squared s times.
    """
    a = as_complex_matrix(a)
    n = a.shape[0]
    norm = inf_norm(a)
    s = 0
    if norm > EXPM_SCALED_NORM:
        s = max(0, int(math.ceil(math.log2(norm / EXPM_SCALED_NORM))))
    scaled = a / (2.0 ** s)

    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, EXPM_MAX_TERMS + 1):
        term = (term @ scaled) / k
        result = result + term
        if inf_norm(term) < EXPM_TERM_TOL * inf_norm(result):
            break

    for _ in range(s):
        result = result @ result
    return result


def matrix_power(m, r: int) -> np.ndarray:
    """m^r by repeated multiplication for r <= 8, binary powering above."""
    a = as_complex_matrix(m)
    if r < 0:
        raise ParameterError(f"Power must be nonnegative, got {r}")
    n = a.shape[0]
    if r == 0:
        return np.eye(n, dtype=complex)
    if r <= POWER_REPEAT_LIMIT:
        result = a
        for _ in range(r - 1):
            result = result @ a
        return result

    result = None
    base = a
    while r:
        if r & 1:
            result = base if result is None else result @ base
        r >>= 1
        if r:
            base = base @ base
    return result


def matrix_power_trace(m, r: int) -> complex:
    """tr(m^r). r = 0 gives n, the trace of the identity."""
    return complex(np.trace(matrix_power(m, r)))
