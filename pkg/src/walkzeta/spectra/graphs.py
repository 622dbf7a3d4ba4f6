"""
Graph objects for the walk models: the d-dimensional torus, its momentum
grid, and column-stochastic transition matrices.
"""
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Tuple, Union

import numpy as np

from src.walkzeta.errors import MatrixFormatError, SizeError

# Single source of truth for the "quantum model requires symmetric P" gate.
SYMMETRY_TOL = 1e-12
COLUMN_SUM_TOL = 1e-12

MATRIX_VERTEX_LIMIT = 4096
SPECTRUM_VERTEX_LIMIT = 2 ** 28
# Largest d with N >= 2 under the vertex limit; also bounds the array axes per dimension.
MAX_DIMENSION = 28


@dataclass(frozen=True)
class TorusSpec:
    """
    The torus T^d_N = (Z mod N)^d with nearest-neighbour adjacency.

    N = 1 and N = 2 are accepted under the multigraph convention: the two
    neighbour slots of a direction may coincide (N = 2) or point back to
    the vertex itself (N = 1).
    """
    d: int
    N: int

    def __post_init__(self):
        if not isinstance(self.d, (int, np.integer)) or self.d < 1:
            raise SizeError(f"Torus dimension must be a positive integer, got {self.d!r}")
        if self.d > MAX_DIMENSION:
            raise SizeError(f"Torus dimension must be <= {MAX_DIMENSION}, got {self.d}")
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise SizeError(f"Torus side must be a positive integer, got {self.N!r}")
        if self.vertex_count > SPECTRUM_VERTEX_LIMIT:
            raise SizeError(
                f"Torus {self.d},{self.N} has {self.vertex_count} vertices "
                f"(limit {SPECTRUM_VERTEX_LIMIT})"
            )

    @property
    def vertex_count(self) -> int:
        return int(self.N) ** int(self.d)

    @classmethod
    def parse(cls, text: str) -> "TorusSpec":
        """Parses the CLI form 'd,N'."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise SizeError(f"Torus must be given as 'd,N', got {text!r}")
        try:
            d, n = int(parts[0]), int(parts[1])
        except ValueError:
            raise SizeError(f"Torus must be given as 'd,N', got {text!r}")
        return cls(d, n)


@dataclass(frozen=True)
class MomentumIndex:
    k: Tuple[int, ...]
    tilde_k: Tuple[float, ...]

    @classmethod
    def from_k(cls, k: Sequence[int], N: int) -> "MomentumIndex":
        if any(kj < 0 or kj >= N for kj in k):
            raise SizeError(f"Momentum index {tuple(k)} outside {{0..{N - 1}}}")
        return cls(tuple(int(kj) for kj in k), tuple(2.0 * math.pi * kj / N for kj in k))


def momentum_indices(spec: TorusSpec) -> Iterator[MomentumIndex]:
    """Yields every k in {0..N-1}^d in row-major order."""
    for flat in range(spec.vertex_count):
        k = np.unravel_index(flat, (spec.N,) * spec.d)
        yield MomentumIndex.from_k([int(kj) for kj in k], spec.N)


def momentum_grid(spec: TorusSpec) -> np.ndarray:
    """
    Returns the angles k~ = 2*pi*k/N as an array of shape (N^d, d), rows in
    row-major order of k.
    """
    axis = 2.0 * np.pi * np.arange(spec.N) / spec.N
    mesh = np.meshgrid(*([axis] * spec.d), indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=-1)


def e_cos(w: Union[Sequence[float], np.ndarray]) -> Union[float, np.ndarray]:
    """
    Sum of cosines over the last axis. A 1-D input gives a float; a 2-D
    array of angle rows gives one value per row.
    """
    arr = np.asarray(w, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] == 0:
        raise SizeError("e_cos needs at least one angle")
    total = np.cos(arr).sum(axis=-1)
    if arr.ndim == 1:
        return float(total)
    return total


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """
    An n x n transposed stochastic matrix: nonnegative entries, unit column
    sums. is_symmetric is derived from the entries.
    """
    entries: np.ndarray
    is_symmetric: bool = field(init=False)

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MatrixFormatError(f"Transition matrix must be square and nonempty, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise MatrixFormatError("Transition matrix has non-finite entries")
        if np.any(arr < 0):
            i, j = np.unravel_index(np.argmin(arr), arr.shape)
            raise MatrixFormatError(f"Negative entry {arr[i, j]!r} at ({i}, {j})")

        deviation = np.abs(arr.sum(axis=0) - 1.0)
        worst = int(np.argmax(deviation))
        if deviation[worst] > COLUMN_SUM_TOL:
            raise MatrixFormatError(
                f"Column {worst} sums to {arr[:, worst].sum()!r}; "
                f"every column must sum to 1 within {COLUMN_SUM_TOL:g}"
            )

        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "is_symmetric", bool(np.max(np.abs(arr - arr.T)) <= SYMMETRY_TOL))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def build_torus_transition(spec: TorusSpec) -> TransitionMatrix:
    """
    Builds the DTRW matrix on T^d_N: each vertex sends 1/2d to each of its 2d
    neighbour slots. Coinciding slots add up (N <= 2).
    """
    n = spec.vertex_count
    if n > MATRIX_VERTEX_LIMIT:
        raise SizeError(f"Torus {spec.d},{spec.N} too large for a dense matrix ({n} > {MATRIX_VERTEX_LIMIT})")

    shape = (spec.N,) * spec.d
    coords = np.indices(shape).reshape(spec.d, -1)
    rows = np.arange(n)
    entries = np.zeros((n, n))
    weight = 1.0 / (2 * spec.d)

    for axis in range(spec.d):
        for step in (1, -1):
            shifted = coords.copy()
            shifted[axis] = (shifted[axis] + step) % spec.N
            cols = np.ravel_multi_index(tuple(shifted), shape)
            np.add.at(entries, (rows, cols), weight)

    return TransitionMatrix(entries)
