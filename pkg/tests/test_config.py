"""
Unit tests for config module.

Tests loading of the defaults file and user config files.
"""

import pytest

from src.config import (
    get_default_mode,
    get_default_plot_options,
    get_default_settings,
    load_config,
    load_user_config,
)
from src.models import SolverSettings


class TestDefaults:
    """Tests for the bundled defaults."""

    def test_bundled_file(self):
        config = load_config()
        assert config["numerics"]["mode"] == "exact"
        assert get_default_mode() == "exact"

    def test_settings_match_dataclass_defaults(self):
        """Test the defaults file and the dataclass agree."""
        assert get_default_settings() == SolverSettings()

    def test_override_file(self, tmp_path):
        path = tmp_path / "defaults.yaml"
        path.write_text("limit:\n  tol: 1.0e-6\nsweep:\n  workers: 4\n")
        settings = get_default_settings(path)

        assert settings.limit_tol == 1e-6
        assert settings.workers == 4
        assert settings.n_cap == SolverSettings().n_cap

    def test_missing_file(self, tmp_path):
        assert load_config(tmp_path / "absent.yaml") == {}
        assert get_default_settings(tmp_path / "absent.yaml") == SolverSettings()

    def test_plot_options(self, tmp_path):
        path = tmp_path / "plot.yaml"
        path.write_text("plot:\n  y_clip: 5\n  width: 4\n")
        options = get_default_plot_options(path)

        assert options.y_clip == 5.0
        assert options.width == 4.0
        assert get_default_plot_options().y_clip is None


class TestUserConfig:
    """Tests for load_user_config function."""

    def test_dashes_become_underscores(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("a-min: -1\na_max: 1\nseed: \"1,2\"\n")
        assert load_user_config(str(path)) == {"a_min": -1, "a_max": 1, "seed": "1,2"}

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError):
            load_user_config(str(path))

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_user_config(str(path)) == {}
