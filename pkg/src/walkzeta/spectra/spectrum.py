"""
Eigenvalue spectra of transition matrices.

Two producers: the closed form (1/d) * sum_j cos(k~_j) on the torus, and a
cyclic Jacobi solver for user-supplied symmetric matrices.
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.walkzeta.errors import ConvergenceError, SizeError, SymmetryRequiredError
from src.walkzeta.spectra.graphs import TorusSpec, TransitionMatrix

logger = logging.getLogger(__name__)

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 50
BACKWARD_ERROR_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Multiset of eigenvalues. Order is the producer's: descending for the
    Jacobi path, row-major in k for the torus closed form.
    """
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=complex, copy=True).reshape(-1)
        if arr.size == 0:
            raise SizeError("Spectrum must contain at least one eigenvalue")
        if not np.all(np.isfinite(arr)):
            raise SizeError("Spectrum has non-finite eigenvalues")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def array(self) -> np.ndarray:
        """Real float array when no value carries an imaginary part, else complex."""
        if not np.any(self.values.imag):
            return self.values.real.copy()
        return self.values

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.values.imag) <= 1e-10))

    @property
    def radius(self) -> float:
        """max_j |lambda_j|"""
        return float(np.max(np.abs(self.values)))

    def sorted(self) -> "Spectrum":
        """Descending by real part, ties by imaginary part."""
        order = np.lexsort((-self.values.imag, -self.values.real))
        return Spectrum(self.values[order])


def torus_eigenvalues(spec: TorusSpec) -> np.ndarray:
    """
    lambda_k = (1/d) * sum_j cos(2*pi*k_j/N) for every k, flattened in
    row-major order of k. Built by outer sums so only N cosines are evaluated.
    """
    cosines = np.cos(2.0 * np.pi * np.arange(spec.N) / spec.N)
    total = cosines
    for _ in range(spec.d - 1):
        total = np.add.outer(total, cosines)
    return np.asarray(total, dtype=float).reshape(-1) / spec.d


def torus_spectrum(spec: TorusSpec) -> Spectrum:
    return Spectrum(torus_eigenvalues(spec))


def _round_robin(n: int) -> List[List[Tuple[int, int]]]:
    """
    Groups all pairs (p, q), p < q, into n-1 (or n) rounds of disjoint pairs
    using the circle method. Pairs within a round commute as rotations.
    """
    players = list(range(n + (n % 2)))
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    return float(np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0)))


def jacobi_eigh(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Cyclic Jacobi eigensolver for a real symmetric matrix.

    Sweeps until off(A) <= 1e-14 * ||A||_F, at most 50 sweeps. Each round
    rotates a set of disjoint (p, q) pairs at once.

    Returns:
        (values, vectors) with vectors[:, j] the eigenvector of values[j],
        in the solver's diagonal order (unsorted).
    """
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v

    frob = float(np.linalg.norm(a))
    threshold = JACOBI_TOL * frob
    rounds = _round_robin(n)

    sweep = 0
    off = _off_norm(a)
    while off > threshold and sweep < JACOBI_MAX_SWEEPS:
        for pairs in rounds:
            p = np.array([pq[0] for pq in pairs])
            q = np.array([pq[1] for pq in pairs])
            apq = a[p, q]
            active = apq != 0.0
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]

            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            # rows, then columns: A <- J^T A J
            row_p, row_q = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * row_p - s[:, None] * row_q
            a[q, :] = s[:, None] * row_p + c[:, None] * row_q
            col_p, col_q = a[:, p].copy(), a[:, q].copy()
            a[:, p] = col_p * c - col_q * s
            a[:, q] = col_p * s + col_q * c
            a[p, q] = 0.0
            a[q, p] = 0.0

            vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vec_p * c - vec_q * s
            v[:, q] = vec_p * s + vec_q * c
        sweep += 1
        off = _off_norm(a)

    if off > threshold:
        logger.warning(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (off = {off:.3e})")
    else:
        logger.debug(f"Jacobi converged: n={n}, sweeps={sweep}, off={off:.3e}")
    return a.diagonal().copy(), v


def hermitian_eigenvalues(m: TransitionMatrix) -> Spectrum:
    """
    All n real eigenvalues of a symmetric transition matrix, with
    multiplicity, sorted descending.

    Raises:
        SymmetryRequiredError: If the matrix is not symmetric.
        ConvergenceError: If some pair has ||Pv - lambda v|| > 1e-10 * n.
    """
    if not m.is_symmetric:
        raise SymmetryRequiredError("hermitian_eigenvalues requires a symmetric transition matrix")

    values, vectors = jacobi_eigh(m.entries)
    residual = float(np.max(np.linalg.norm(m.entries @ vectors - vectors * values[None, :], axis=0)))
    logger.debug(f"Jacobi backward error max ||Pv - lambda v|| = {residual:.3e}")
    if residual > BACKWARD_ERROR_TOL * m.n:
        raise ConvergenceError(
            f"Eigenpair backward error {residual:.3e} exceeds {BACKWARD_ERROR_TOL:g} * n = {BACKWARD_ERROR_TOL * m.n:.3e}"
        )

    return Spectrum(np.sort(values)[::-1])
