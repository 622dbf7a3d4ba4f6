"""
CSV Exporter module for walkzeta.
Tables are written with a header row and fixed 17-significant-digit
scientific formatting so identical input gives byte-identical output.
"""
import io
from pathlib import Path

import pandas as pd

from src.export.atomic import atomic_write_text

FLOAT_FORMAT = "%.16e"


def render_csv(table: pd.DataFrame) -> str:
    buffer = io.StringIO()
    table.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def export_to_csv(table: pd.DataFrame, filepath: Path) -> None:
    """
    Exports a table to a CSV file using atomic write.

    Raises:
        IOError: If file writing fails.
    """
    atomic_write_text(render_csv(table), filepath)
