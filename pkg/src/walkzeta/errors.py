"""
Exception hierarchy for walkzeta.

Every error raised by the library derives from WalkZetaError, which is a
ValueError so that callers treating bad input generically keep working.
"""
from typing import Optional


class WalkZetaError(ValueError):
    """Base class for all library errors."""


class ParameterError(WalkZetaError):
    """Invalid evolution parameters, coefficient index or lattice state."""


class SizeError(WalkZetaError):
    """Dimension, side length, vertex count or input length out of range."""


class SymmetryRequiredError(WalkZetaError):
    """The operation needs a symmetric transition matrix."""


class UnsupportedError(WalkZetaError):
    """The requested quantity cannot be obtained for this input."""


class RadiusError(WalkZetaError):
    """The series variable lies outside the disk |u| * rho < 1."""

    def __init__(self, u: complex, rho: float, message: Optional[str] = None):
        self.u = u
        self.rho = rho
        super().__init__(
            message or f"|u| * rho must be < 1 (|u| = {abs(u):.6g}, rho = {rho:.6g})"
        )


class EnvelopeError(WalkZetaError):
    """Argument outside the documented accuracy envelope."""


class GridTooCoarseError(WalkZetaError):
    """Quadrature grid too coarse for the requested quantity."""


class TruncationError(WalkZetaError):
    """Kernel truncation residual could not be met within the radius cap."""


class MatrixFormatError(WalkZetaError):
    """Malformed transition matrix file or array."""


class ConvergenceError(WalkZetaError):
    """Iterative solver result fails its backward-error bound."""
