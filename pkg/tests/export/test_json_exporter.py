import pytest
import json
import math
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pandas as pd

from src.export.json_exporter import (
    SCHEMA_VERSION,
    column_layout,
    export_to_json,
    render_json,
    table_columns,
    table_records,
)


def test_export_json_valid(tmp_path):
    """Test valid JSON export."""
    data = {"command": "spectrum", "rows": [{"index": 0, "re": 1.0, "im": 0.0}]}
    filepath = tmp_path / "output.json"

    export_to_json(data, filepath)

    assert filepath.exists()
    with open(filepath, "r", encoding="utf-8") as f:
        loaded_data = json.load(f)

    assert loaded_data["schema_version"] == SCHEMA_VERSION
    assert loaded_data["rows"] == data["rows"]


def test_schema_version_first():
    text = render_json({"command": "walk", "schema_version": "ignored"})
    assert list(json.loads(text))[0] == "schema_version"
    assert json.loads(text)["schema_version"] == SCHEMA_VERSION
    assert text.endswith("\n")


def test_numeric_types():
    """Test serialization of numpy scalars, arrays and complex values."""
    data = {
        "count": np.int64(3),
        "value": np.float64(0.25),
        "flag": np.bool_(True),
        "vector": np.array([1.0, 2.0]),
        "z": complex(0.5, -1.0),
    }
    loaded = json.loads(render_json(data))
    assert loaded["count"] == 3
    assert loaded["value"] == 0.25
    assert loaded["flag"] is True
    assert loaded["vector"] == [1.0, 2.0]
    assert loaded["z"] == [0.5, -1.0]


def test_non_finite_become_null():
    loaded = json.loads(render_json({"x": float("nan"), "nested": [1.0, math.inf], "z": complex(math.nan, 1.0)}))
    assert loaded["x"] is None
    assert loaded["nested"] == [1.0, None]
    assert loaded["z"] == [None, 1.0]


def test_table_records_native_scalars():
    table = pd.DataFrame({"site": [-1, 0], "re": [0.25, 0.5], "error": ["", "RadiusError: out"]})
    records = table_records(table)
    assert records[0] == {"site": -1, "re": 0.25, "error": ""}
    assert type(records[1]["site"]) is int
    assert type(records[1]["re"]) is float


def test_column_layout_pairs_complex_columns():
    layout = column_layout(["model", "u_re", "u_im", "c_re", "uncertainty", "error"])
    assert layout == [("model", "model"), ("u", ("u_re", "u_im")), ("c_re", "c_re"), ("uncertainty", "uncertainty"),
                      ("error", "error")]
    assert column_layout(["site", "re", "im", "probability"])[1] == ("value", ("re", "im"))


def test_table_records_emit_complex_pairs():
    table = pd.DataFrame({
        "r": [1, 2],
        "c_re": [0.5, np.nan],
        "c_im": [-0.25, np.nan],
        "error": ["", "EnvelopeError: too large"],
    })
    assert table_columns(table) == ["r", "c", "error"]
    records = table_records(table)
    assert records[0] == {"r": 1, "c": [0.5, -0.25], "error": ""}
    assert records[1]["c"] is None
    loaded = json.loads(render_json({"rows": records}))
    assert loaded["rows"][0]["c"] == [0.5, -0.25]
    assert loaded["rows"][1]["c"] is None


def test_render_is_deterministic():
    data = {"rows": [{"a": 0.1 + 0.2}], "graph": "torus(1,4)"}
    assert render_json(data) == render_json(data)


def test_export_json_atomic(tmp_path):
    """
    Test that atomic write uses a temporary file.
    We mock shutil.move to verify it's called.
    """
    filepath = tmp_path / "atomic.json"

    with patch("shutil.move") as mock_move:
        export_to_json({"test": "atomic"}, filepath)
        assert mock_move.called
        src, dst = mock_move.call_args[0]
        assert dst == str(filepath)
        assert src != str(filepath)


def test_export_json_failure_cleans_up(tmp_path):
    filepath = tmp_path / "fail.json"

    with patch("shutil.move", side_effect=OSError("disk full")):
        with pytest.raises(IOError, match="Failed to write"):
            export_to_json({"test": 1}, filepath)

    assert list(tmp_path.iterdir()) == []
