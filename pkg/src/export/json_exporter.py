"""
JSON Exporter module for walkzeta.
Handles serialization of result documents to JSON.
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.export.atomic import atomic_write_text

SCHEMA_VERSION = "1"


class CustomJSONEncoder(json.JSONEncoder):
    """JSON encoder for complex numbers and numpy scalars/arrays."""
    def default(self, obj):
        if isinstance(obj, (complex, np.complexfloating)):
            return [float(obj.real), float(obj.imag)]
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        return super().default(obj)


def _scrub(obj: Any) -> Any:
    """Replaces NaN and infinities with None, recursively."""
    if isinstance(obj, dict):
        return {k: _scrub(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return _scrub(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [_scrub(v) for v in obj]
    if isinstance(obj, (float, np.floating)) and not math.isfinite(obj):
        return None
    if isinstance(obj, (complex, np.complexfloating)):
        return [_scrub(float(obj.real)), _scrub(float(obj.imag))]
    return obj


Source = Union[str, Tuple[str, str]]


def column_layout(columns: Sequence[str]) -> List[Tuple[str, Source]]:
    """
    Groups table columns into output fields. A `<name>_re` column with a
    matching `<name>_im` becomes one complex field `<name>`; a bare
    `re`/`im` pair becomes `value`. Other columns pass through.
    """
    present = set(columns)
    layout: List[Tuple[str, Source]] = []
    for column in columns:
        if column == "re" and "im" in present:
            layout.append(("value", ("re", "im")))
        elif column.endswith("_re") and f"{column[:-3]}_im" in present:
            layout.append((column[:-3], (column, f"{column[:-3]}_im")))
        elif (column == "im" and "re" in present) or (column.endswith("_im") and f"{column[:-3]}_re" in present):
            continue
        else:
            layout.append((column, column))
    return layout


def _native(value: Any) -> Any:
    return value.item() if isinstance(value, np.generic) else value


def _pair(re: Any, im: Any) -> Optional[List[float]]:
    re, im = float(re), float(im)
    if math.isnan(re) and math.isnan(im):
        return None
    return [re, im]


def table_records(table: pd.DataFrame) -> List[Dict[str, Any]]:
    """
    One dict per row, in row order, with native Python scalars. Complex
    values are [re, im] pairs (null when unavailable).
    """
    layout = column_layout(list(table.columns))
    records = []
    for row in table.to_dict(orient="records"):
        record = {}
        for name, source in layout:
            if isinstance(source, tuple):
                record[name] = _pair(row[source[0]], row[source[1]])
            else:
                record[name] = _native(row[source])
        records.append(record)
    return records


def table_columns(table: pd.DataFrame) -> List[str]:
    """Field names of table_records, in order."""
    return [name for name, _ in column_layout(list(table.columns))]


def render_json(data: Dict[str, Any]) -> str:
    """
    Renders a document with a leading schema_version field.
    Key order is preserved so identical input gives identical text.
    """
    document = {"schema_version": SCHEMA_VERSION}
    document.update({k: _scrub(v) for k, v in data.items() if k != "schema_version"})
    return json.dumps(document, indent=2, ensure_ascii=False, cls=CustomJSONEncoder, allow_nan=False) + "\n"


def export_to_json(data: Dict[str, Any], filepath: Path) -> None:
    """
    Exports data to a JSON file using atomic write.

    Args:
        data: Dictionary of data to export.
        filepath: Path to the output file.

    Raises:
        IOError: If file writing fails.
    """
    atomic_write_text(render_json(data), filepath)
