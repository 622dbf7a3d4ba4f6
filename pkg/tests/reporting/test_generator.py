import math

import pandas as pd
import pytest
from rich.panel import Panel
from rich.table import Table

from src.walkzeta.reporting.generator import generate_sweep_table, generate_verify_summary, generate_verify_table
from src.walkzeta.services.verifier import CheckResult

RESULTS = [
    CheckResult("jacobi_spectrum", "Jacobi eigenvalues match the torus closed form", True, 2e-15, 1e-10, 4),
    CheckResult("pde_order", "Residual ratio", False, 1.7, 1.0, 3),
    CheckResult("rotation_identity", "I_x(it) = i^x J_x(t)", False, math.nan, math.nan, 0, "RuntimeError: boom"),
]


def test_verify_table_structure():
    table = generate_verify_table(RESULTS, "quick")
    assert isinstance(table, Table)
    assert table.title == "Verification (quick)"
    assert [c.header for c in table.columns] == ["Check", "Status", "Worst error", "Tolerance", "Cases", "Description"]
    assert table.row_count == 3


def test_verify_table_content(rich_console, assert_rich_contains):
    rich_console.print(generate_verify_table(RESULTS, "full"))
    assert_rich_contains(rich_console, "jacobi_spectrum")
    assert_rich_contains(rich_console, "PASS")
    assert_rich_contains(rich_console, "FAIL")
    assert_rich_contains(rich_console, "2.0e-15")
    # The failure detail replaces the description
    assert_rich_contains(rich_console, "RuntimeError: boom")


def test_verify_summary_failed(rich_console, assert_rich_contains):
    panel = generate_verify_summary(RESULTS)
    assert isinstance(panel, Panel)
    rich_console.print(panel)
    assert_rich_contains(rich_console, "2 of 3 checks failed: pde_order, rotation_identity")


def test_verify_summary_passed(rich_console, assert_rich_contains):
    rich_console.print(generate_verify_summary(RESULTS[:1]))
    assert_rich_contains(rich_console, "All 1 checks passed")


def test_sweep_table(rich_console, assert_rich_contains):
    frame = pd.DataFrame({
        "model": ["ctm", "ctm"],
        "r": [1, 2],
        "c_re": [0.46575960759364043, math.nan],
        "error": ["", "EnvelopeError: r * t too large"],
    })
    table = generate_sweep_table(frame, "coeff", digits=4)
    assert table.row_count == 2
    rich_console.print(table)
    assert_rich_contains(rich_console, "4.658e-01")
    assert_rich_contains(rich_console, "N/A")
    assert_rich_contains(rich_console, "EnvelopeError")


def test_sweep_table_elides_rows():
    frame = pd.DataFrame({"site": list(range(10)), "re": [0.1] * 10})
    table = generate_sweep_table(frame, "walk", max_rows=4)
    assert table.row_count == 4
    assert table.caption == "6 more rows not shown"


def test_sweep_table_empty():
    table = generate_sweep_table(pd.DataFrame(), "spectrum")
    assert table.title == "spectrum (Empty)"


def test_sweep_table_merges_complex_columns(rich_console, assert_rich_contains):
    frame = pd.DataFrame({
        "u_re": [0.5, 0.25],
        "u_im": [0.5, 0.0],
        "zeta_inverse_re": [0.75, math.nan],
        "zeta_inverse_im": [-0.125, math.nan],
    })
    table = generate_sweep_table(frame, "zeta", digits=3)
    assert [c.header for c in table.columns] == ["u", "zeta_inverse"]
    rich_console.print(table)
    assert_rich_contains(rich_console, "5.00e-01 + 5.00e-01i")
    assert_rich_contains(rich_console, "7.50e-01 - 1.25e-01i")
    assert_rich_contains(rich_console, "2.50e-01")
    assert_rich_contains(rich_console, "N/A")
