"""Unit tests for settings loading."""

import pytest

from config import (
    DEFAULT_CONFIG_PATH,
    RICCATI_METHODS,
    Settings,
    get_default_settings,
    load_settings,
    set_default_settings,
    settings_from_dict,
)
from exceptions import ConfigurationError


class TestDefaults:
    """Built-in defaults."""

    def test_solver_defaults(self):
        settings = Settings()
        assert settings.solver.tolerance == 1e-13
        assert settings.solver.max_iterations == 10_000
        assert settings.solver.residual_tolerance == 1e-10
        assert settings.solver.methods == list(RICCATI_METHODS)

    def test_bisection_defaults(self):
        settings = Settings()
        assert settings.bisection.tolerance == 1e-6
        assert settings.bisection.max_iterations == 60
        assert settings.bisection.lower_ratio == 1e-6

    def test_grid_and_reproduction_defaults(self):
        settings = Settings()
        assert settings.grid.count == 2048
        assert settings.reproduction.table1_tolerance == 0.02
        assert settings.reproduction.table2_tolerance == 0.03
        assert settings.reproduction.tracking_target == "current"

    def test_default_yaml_matches_dataclasses(self):
        assert load_settings(DEFAULT_CONFIG_PATH) == Settings()

    def test_default_singleton(self):
        first = get_default_settings()
        assert get_default_settings() is first
        custom = Settings(log_level="DEBUG")
        set_default_settings(custom)
        assert get_default_settings() is custom
        set_default_settings(None)
        assert get_default_settings() is not custom


class TestSettingsFromDict:
    """Sectioned mapping parsing."""

    def test_none_gives_defaults(self):
        assert settings_from_dict(None) == Settings()

    def test_partial_section(self):
        settings = settings_from_dict({"bisection": {"tolerance": 1e-4}})
        assert settings.bisection.tolerance == 1e-4
        assert settings.bisection.max_iterations == 60

    def test_int_accepted_for_float(self):
        settings = settings_from_dict({"simulation": {"burn_in_factor": 5}})
        assert settings.simulation.burn_in_factor == 5.0
        assert isinstance(settings.simulation.burn_in_factor, float)

    def test_unknown_key(self):
        with pytest.raises(ConfigurationError, match="Unknown configuration key"):
            settings_from_dict({"solver": {"tolerence": 1e-10}})

    def test_wrong_type(self):
        with pytest.raises(ConfigurationError, match="Invalid value"):
            settings_from_dict({"grid": {"count": "big"}})

    def test_bool_is_not_an_int(self):
        with pytest.raises(ConfigurationError):
            settings_from_dict({"grid": {"count": True}})

    def test_section_must_be_mapping(self):
        with pytest.raises(ConfigurationError, match="mapping"):
            settings_from_dict({"solver": 3})

    def test_unknown_method(self):
        with pytest.raises(ConfigurationError, match="solver.methods"):
            settings_from_dict({"solver": {"methods": ["newton"]}})

    def test_grid_count_power_of_two(self):
        with pytest.raises(ConfigurationError, match="power of two"):
            settings_from_dict({"grid": {"count": 1000}})

    def test_tracking_target(self):
        settings = settings_from_dict({"reproduction": {"tracking_target": "next"}})
        assert settings.reproduction.tracking_target == "next"
        with pytest.raises(ConfigurationError, match="tracking_target"):
            settings_from_dict({"reproduction": {"tracking_target": "previous"}})

    def test_root_must_be_mapping(self):
        with pytest.raises(ConfigurationError):
            settings_from_dict([1, 2])


class TestLoadSettings:
    """YAML files."""

    def test_load_file(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("solver:\n  methods: [schur]\nlog_level: DEBUG\n", encoding="utf-8")
        settings = load_settings(path)
        assert settings.solver.methods == ["schur"]
        assert settings.log_level == "DEBUG"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="Cannot read"):
            load_settings(tmp_path / "absent.yaml")

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("solver: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Invalid YAML"):
            load_settings(path)

    def test_empty_file_is_defaults(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_settings(path) == Settings()
