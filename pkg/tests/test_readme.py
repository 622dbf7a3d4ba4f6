import pytest
from pathlib import Path


def test_readme_exists():
    readme = Path("README.md")
    assert readme.exists()


def test_readme_content():
    readme = Path("README.md")
    content = readme.read_text(encoding="utf-8")

    # Check for key sections and flags
    for command in ("spectrum", "zeta", "coeff", "walk", "verify"):
        assert f"python cli.py {command}" in content
    assert "--limit" in content
    assert "--u=" in content
    assert "--no-color" in content
    assert "--config" in content
    assert "config.yaml" in content
    assert "export NO_COLOR=1" in content


def test_readme_config_example_is_valid(tmp_path):
    """The example config block loads and validates."""
    from src.config.loader import load_config

    content = Path("README.md").read_text(encoding="utf-8")
    block = content.split("**Example `config.yaml`:**\n```yaml\n", 1)[1].split("```", 1)[0]
    path = tmp_path / "config.yaml"
    path.write_text(block)
    config = load_config(path)
    assert config["defaults"]["verify_level"] == "full"
    assert config["display"]["show_progress"] is False
