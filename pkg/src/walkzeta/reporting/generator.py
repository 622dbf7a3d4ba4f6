from typing import List

import pandas as pd
from rich import box
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from src.cli.formatters import format_complex, format_error, format_scientific
from src.cli.theme import SEVERITY_STYLES, get_check_color
from src.export.json_exporter import column_layout
from src.walkzeta.services.verifier import CheckResult


def generate_verify_table(results: List[CheckResult], level: str) -> Table:
    """
    Generates a Rich Table with one PASS/FAIL row per check, colored by
    how much of the tolerance the worst observed error used.
    """
    table = Table(title=f"Verification ({level})", border_style="blue", box=box.SIMPLE)
    table.add_column("Check", style="cyan")
    table.add_column("Status", justify="center")
    table.add_column("Worst error", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Cases", justify="right")
    table.add_column("Description")

    for result in results:
        color = get_check_color(result.passed, result.worst_error, result.tolerance)
        status = "PASS" if result.passed else "FAIL"
        description = result.detail or result.description
        table.add_row(
            result.name,
            f"[{color}]{status}[/{color}]",
            f"[{color}]{format_error(result.worst_error)}[/{color}]",
            format_error(result.tolerance),
            str(result.cases),
            description,
        )

    return table


def generate_verify_summary(results: List[CheckResult]) -> Panel:
    failed = [r.name for r in results if not r.passed]
    if failed:
        text = Text(f"{len(failed)} of {len(results)} checks failed: {', '.join(failed)}",
                    style=SEVERITY_STYLES["fail"])
    else:
        text = Text(f"All {len(results)} checks passed", style=SEVERITY_STYLES["pass"])
    return Panel(text, title="VERIFY", border_style="cyan", width=80)


def generate_sweep_table(table: pd.DataFrame, title: str, digits: int = 6, max_rows: int = 50) -> Table:
    """
    Terminal preview of a result table. Floats are shown in scientific
    notation and re/im column pairs as one complex cell; rows beyond
    max_rows are elided.

    Returns:
        Table: Rich Table object.
    """
    if table.empty:
        return Table(title=f"{title} (Empty)")

    layout = column_layout(list(table.columns))
    rich_table = Table(title=title, border_style="magenta", box=box.SIMPLE)
    for name, _ in layout:
        if name in ("model", "graph", "method", "error"):
            rich_table.add_column(name, style="bold cyan" if name != "error" else SEVERITY_STYLES["fail"])
        else:
            rich_table.add_column(name, justify="right")

    for _, row in table.head(max_rows).iterrows():
        cells = []
        for _, source in layout:
            if isinstance(source, tuple):
                cells.append(format_complex(complex(row[source[0]], row[source[1]]), digits))
                continue
            val = row[source]
            if isinstance(val, float):
                cells.append(format_scientific(val, digits))
            else:
                cells.append(str(val))
        rich_table.add_row(*cells)

    if len(table) > max_rows:
        rich_table.caption = f"{len(table) - max_rows} more rows not shown"
    return rich_table
