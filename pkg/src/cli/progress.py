"""
Progress infrastructure for the walkzeta CLI.
"""
from typing import Dict, Optional

from rich.console import Console
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TextColumn,
    TimeElapsedColumn
)

# Maps internal stage keys to user-friendly display strings
STAGE_DESCRIPTIONS: Dict[str, str] = {
    "spectrum": "Computing Spectrum",
    "zeta": "Evaluating Zeta Functions",
    "coeff": "Evaluating Coefficients",
    "walk": "Tabulating Walk",
    "verify": "Running Checks",
}


def create_progress_bar(console: Optional[Console] = None) -> Progress:
    """
    Creates a configured Rich Progress instance. Pass a stderr console so
    table output on stdout stays clean.
    """
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
        TimeElapsedColumn(),
        console=console,
        transient=True  # Remove bar when done
    )
