"""
Shared fixtures: Rich console capture and config isolation.
"""
import pytest
from io import StringIO
from rich.console import Console


@pytest.fixture(autouse=True)
def isolated_user_config(tmp_path, monkeypatch):
    """Points the XDG lookup at an empty directory so a real user config never leaks in."""
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    monkeypatch.delenv("NO_COLOR", raising=False)


@pytest.fixture
def rich_console():
    """
    Returns a Rich Console that writes to a StringIO buffer.
    force_terminal=True keeps ANSI styling in the captured text.
    """
    return Console(file=StringIO(), force_terminal=True, width=120)


@pytest.fixture
def assert_rich_contains():
    """
    Fixture that returns a helper function to assert console output.
    """
    def _assert(console: Console, expected_text: str):
        output = console.file.getvalue()
        assert expected_text in output, f"Expected '{expected_text}' not found in output:\n{output}"
    return _assert
