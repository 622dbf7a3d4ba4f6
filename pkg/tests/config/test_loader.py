import pytest
import yaml
from pathlib import Path
from src.config.loader import load_config, user_config_path, validate_config


def test_load_defaults():
    """Test loading default configuration."""
    config = load_config()
    assert config["defaults"]["format"] == "csv"
    assert config["defaults"]["grid"] == 256
    assert config["defaults"]["walk_radius"] == 32
    assert config["defaults"]["verify_level"] == "quick"
    assert config["limits"]["determinant_vertices"] == 512
    assert config["display"]["significant_digits"] == 17


def test_load_user_config(tmp_path):
    """Test loading user configuration overrides."""
    user_config_path = tmp_path / "config.yaml"
    user_config_data = {
        "defaults": {
            "grid": 64
        },
        "display": {
            "show_progress": False
        }
    }

    with open(user_config_path, "w") as f:
        yaml.dump(user_config_data, f)

    config = load_config(user_config_path)

    # Check overrides
    assert config["defaults"]["grid"] == 64
    assert config["display"]["show_progress"] is False

    # Check preserved defaults
    assert config["defaults"]["format"] == "csv"
    assert config["limits"]["determinant_vertices"] == 512


def test_xdg_config_is_picked_up(tmp_path, monkeypatch):
    """Test that the XDG location is read when no path is given."""
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))
    path = user_config_path()
    assert path == tmp_path / "walkzeta" / "config.yaml"

    path.parent.mkdir(parents=True)
    path.write_text("defaults:\n  format: json\n")
    assert load_config()["defaults"]["format"] == "json"


def test_invalid_yaml(tmp_path):
    """Test handling of invalid YAML file."""
    invalid_config_path = tmp_path / "invalid.yaml"
    with open(invalid_config_path, "w") as f:
        f.write("invalid: yaml: [unclosed list")

    # Should not crash, but return defaults
    config = load_config(invalid_config_path)
    assert config["defaults"]["grid"] == 256


def test_missing_file_uses_defaults(tmp_path):
    config = load_config(tmp_path / "nope.yaml")
    assert config["defaults"]["format"] == "csv"


def test_non_mapping_ignored(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    assert load_config(path)["defaults"]["grid"] == 256


def test_validation_error():
    """Test validation logic."""
    invalid_config = {"defaults": {}}  # Missing other sections

    with pytest.raises(ValueError, match="Missing required config section"):
        validate_config(invalid_config)


@pytest.mark.parametrize("defaults,limits", [
    ({"format": "xml"}, {}),
    ({"verify_level": "exhaustive"}, {}),
    ({"grid": 0}, {}),
    ({"walk_radius": "wide"}, {}),
    ({}, {"determinant_vertices": -1}),
])
def test_validation_ranges(defaults, limits):
    with pytest.raises(ValueError):
        validate_config({"defaults": defaults, "limits": limits, "display": {}})


def test_bad_user_value_raises(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("defaults:\n  grid: -4\n")
    with pytest.raises(ValueError, match="defaults.grid"):
        load_config(path)
