"""
Dense CSV format for transition matrices: a first line holding n, then n
lines of n comma-separated decimal entries.
"""
import io
from pathlib import Path

import numpy as np
import pandas as pd

from src.export.atomic import atomic_write_text
from src.walkzeta.errors import MatrixFormatError
from src.walkzeta.spectra.graphs import TransitionMatrix


def read_matrix_csv(filepath: Path) -> TransitionMatrix:
    """
    Parses a matrix file.

    Raises:
        MatrixFormatError: On a malformed header, a wrong row/column count,
            non-numeric cells, or a column-sum violation (the message names
            the worst column).
        IOError: If the file cannot be read.
    """
    text = Path(filepath).read_text(encoding="utf-8")
    header, _, body = text.lstrip().partition("\n")
    try:
        n = int(header.strip())
    except ValueError:
        raise MatrixFormatError(f"{filepath}: first line must be the dimension n, got {header.strip()!r}")
    if n < 1:
        raise MatrixFormatError(f"{filepath}: dimension must be positive, got {n}")

    try:
        frame = pd.read_csv(io.StringIO(body), header=None, dtype=float, skip_blank_lines=True)
    except (ValueError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise MatrixFormatError(f"{filepath}: could not parse entries: {e}")

    if frame.shape != (n, n):
        raise MatrixFormatError(f"{filepath}: expected {n}x{n} entries, found {frame.shape[0]}x{frame.shape[1]}")

    try:
        return TransitionMatrix(frame.to_numpy())
    except MatrixFormatError as e:
        raise MatrixFormatError(f"{filepath}: {e}")


def write_matrix_csv(matrix: TransitionMatrix, filepath: Path) -> None:
    """Writes a matrix file atomically, entries at full round-trip precision."""
    buffer = io.StringIO()
    buffer.write(f"{matrix.n}\n")
    pd.DataFrame(np.asarray(matrix.entries)).to_csv(
        buffer, header=False, index=False, float_format="%.17g", lineterminator="\n"
    )
    atomic_write_text(buffer.getvalue(), Path(filepath))
