import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULTS_PATH = Path(__file__).parent / "defaults.yaml"
REQUIRED_SECTIONS = ["defaults", "limits", "display"]
OUTPUT_FORMATS = ("csv", "json")
VERIFY_LEVELS = ("quick", "full")


def user_config_path() -> Path:
    """$XDG_CONFIG_HOME/walkzeta/config.yaml, else ~/.walkzeta/config.yaml."""
    xdg_config = os.environ.get("XDG_CONFIG_HOME")
    if xdg_config:
        return Path(xdg_config) / "walkzeta" / "config.yaml"
    return Path.home() / ".walkzeta" / "config.yaml"


def _read_yaml(path: Path) -> Dict[str, Any]:
    """Reads one YAML mapping; unreadable or non-mapping files count as empty."""
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as e:
        logger.warning(f"Failed to parse config file {path}: {e}")
        return {}
    if data is None:
        return {}
    if not isinstance(data, dict):
        logger.warning(f"Ignoring config file {path}: top level is not a mapping")
        return {}
    return data


def load_config(config_path: Optional[Path] = None) -> Dict[str, Any]:
    """
    Builds the effective configuration: packaged defaults, overlaid with
    the user file when one is found, then validated.

    Args:
        config_path: Explicit user file. When omitted the XDG location is
            tried and silently skipped if absent.

    Raises:
        FileNotFoundError: If the packaged defaults are missing.
        ValueError: If the merged result fails validation.
    """
    if not DEFAULTS_PATH.is_file():
        raise FileNotFoundError(f"Packaged defaults missing: {DEFAULTS_PATH}")
    config = _read_yaml(DEFAULTS_PATH)

    if config_path is None:
        candidate = user_config_path()
        config_path = candidate if candidate.is_file() else None
    elif not config_path.is_file():
        logger.warning(f"Config file {config_path} not found, using defaults")
        config_path = None

    if config_path is not None:
        _deep_merge(config, _read_yaml(config_path))

    validate_config(config)
    return config


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> None:
    """Recursive merge of dictionaries."""
    for key, val in update.items():
        if isinstance(val, dict) and key in base and isinstance(base[key], dict):
            _deep_merge(base[key], val)
        else:
            base[key] = val


def validate_config(config: Dict[str, Any]) -> bool:
    """
    Validate configuration schema.

    Raises:
        ValueError: If a section is missing or a known value is out of range.
    """
    for section in REQUIRED_SECTIONS:
        if section not in config:
            raise ValueError(f"Missing required config section: {section}")

    defaults = config["defaults"]
    if defaults.get("format", "csv") not in OUTPUT_FORMATS:
        raise ValueError(f"defaults.format must be one of {OUTPUT_FORMATS}")
    if defaults.get("verify_level", "quick") not in VERIFY_LEVELS:
        raise ValueError(f"defaults.verify_level must be one of {VERIFY_LEVELS}")
    for key in ("grid", "walk_radius"):
        value = defaults.get(key, 1)
        if not isinstance(value, int) or value < 1:
            raise ValueError(f"defaults.{key} must be a positive integer")

    vertices = config["limits"].get("determinant_vertices", 0)
    if not isinstance(vertices, int) or vertices < 0:
        raise ValueError("limits.determinant_vertices must be a nonnegative integer")

    return True
