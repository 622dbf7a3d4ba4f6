"""
Theme module for the walkzeta CLI.
Centralizes semantic colors for verification results and error panels.
"""
from typing import Dict, List, Optional

from rich.console import Group
from rich.panel import Panel
from rich.text import Text

# Check outcome -> Rich style
SEVERITY_STYLES: Dict[str, str] = {
    "fail": "bold red",
    "near_tolerance": "yellow",
    "pass": "green",
    "untoleranced": "white",
    "info": "cyan",
}

# A passing check whose worst error is within this fraction of its
# tolerance is shown as a warning.
MARGIN_WARNING = 0.1

PANEL_WIDTH = 80


def get_check_color(passed: bool, worst_error: Optional[float], tolerance: Optional[float]) -> str:
    """
    Returns the Rich style for a verification row.

    Failed checks are critical; passing checks are healthy unless the worst
    observed error uses more than a tenth of the tolerance.
    """
    if not passed:
        return SEVERITY_STYLES["fail"]
    if worst_error is None or tolerance is None or tolerance <= 0:
        return SEVERITY_STYLES["untoleranced"]
    if worst_error > MARGIN_WARNING * tolerance:
        return SEVERITY_STYLES["near_tolerance"]
    return SEVERITY_STYLES["pass"]


def generate_error_panel(title: str, message: str, suggestions: Optional[List[str]] = None) -> Panel:
    """
    Builds the red panel printed to stderr before a nonzero exit.

    `title` is usually the exception class name; `suggestions` become a
    bulleted hint list under the message.
    """
    lines = [Text(message)]
    for i, hint in enumerate(suggestions or []):
        if i == 0:
            lines.append(Text("\nSuggestions:", style="bold yellow"))
        lines.append(Text(f"• {hint}"))

    return Panel(Group(*lines), title=f"❌ {title}", border_style=SEVERITY_STYLES["fail"], width=PANEL_WIDTH)
