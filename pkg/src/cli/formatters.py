"""
Formatter utilities for the walkzeta CLI.
Terminal rendering of reals, complex values and error magnitudes.
"""
import math
from typing import Optional, Union


def _missing(value) -> bool:
    if value is None:
        return True
    try:
        return math.isnan(value)
    except TypeError:
        return False


def format_scientific(value: Optional[float], digits: int = 6) -> str:
    """
    Formats a real in scientific notation with `digits` significant digits.

    Returns:
        str: e.g. "4.65760e-01", or "N/A" for None/NaN.
    """
    if _missing(value):
        return "N/A"
    try:
        return f"{float(value):.{max(digits, 1) - 1}e}"
    except (ValueError, TypeError):
        return "N/A"


def format_complex(value: Optional[Union[complex, float]], digits: int = 6) -> str:
    """Formats re + im i; real input is shown without an imaginary part."""
    if value is None:
        return "N/A"
    z = complex(value)
    if math.isnan(z.real) or math.isnan(z.imag):
        return "N/A"
    re = format_scientific(z.real, digits)
    if z.imag == 0:
        return re
    sign = "-" if z.imag < 0 else "+"
    return f"{re} {sign} {format_scientific(abs(z.imag), digits)}i"


def format_error(value: Optional[float]) -> str:
    """Short form for error magnitudes, e.g. "3.2e-13"."""
    if _missing(value):
        return "N/A"
    if value == 0:
        return "0"
    return f"{float(value):.1e}"
