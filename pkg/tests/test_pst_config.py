#!/usr/bin/env python
"""
test_pst_config.py - Unit Tests for Command Configuration

Tests cover:
- Defaults
- PST_* environment variables and .env files
- Flag overrides and validation
"""

import pytest
from pathlib import Path
import sys

# Add project to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from pst_network.pst_config import CliConfig, load_config, parse_mode
from pst_network.pst_errors import ConfigError
from pst_network.pst_routing import SolveMode


@pytest.mark.unit
class TestDefaults:
    """Test default configuration"""

    def test_defaults(self):
        config = load_config()

        assert config.tolerance == 1e-9
        assert config.time_tolerance == 1e-6
        assert config.t_max == 20.0
        assert config.mode is None
        assert config.correct_durations is False

    def test_document_omits_output_options(self):
        doc = CliConfig().to_dict()

        assert "output" not in doc
        assert "log_level" not in doc
        assert doc["mode"] is None


@pytest.mark.unit
class TestEnvironment:
    """Test PST_* variables"""

    def test_environment_values(self, monkeypatch):
        monkeypatch.setenv("PST_TOLERANCE", "1e-6")
        monkeypatch.setenv("PST_ROUND_CAP", "8")
        monkeypatch.setenv("PST_MODE", "greedy")

        config = load_config()

        assert config.tolerance == 1e-6
        assert config.round_cap == 8
        assert config.mode is SolveMode.GREEDY

    def test_flags_override_environment(self, monkeypatch):
        monkeypatch.setenv("PST_T_MAX", "5")

        config = load_config(t_max=7.5, mode="EXACT")

        assert config.t_max == 7.5
        assert config.mode is SolveMode.EXACT

    def test_none_flag_keeps_environment(self, monkeypatch):
        monkeypatch.setenv("PST_T_MAX", "5")

        assert load_config(t_max=None).t_max == 5.0

    def test_bad_number(self, monkeypatch):
        monkeypatch.setenv("PST_ROUND_CAP", "many")

        with pytest.raises(ConfigError):
            load_config()

    def test_env_file_is_passed_to_dotenv(self, mocker):
        load = mocker.patch("pst_network.pst_config.load_dotenv")

        load_config(env_file="custom.env")

        load.assert_called_once_with("custom.env")


@pytest.mark.unit
class TestValidation:
    """Test configuration validation"""

    @pytest.mark.parametrize("overrides", [
        {"tolerance": 0.0},
        {"tolerance": 0.1},
        {"t_max": -1.0},
        {"round_cap": 0},
        {"log_level": "LOUD"},
    ])
    def test_invalid_values(self, overrides):
        with pytest.raises(ConfigError):
            load_config(**overrides)

    def test_unknown_parameter(self):
        with pytest.raises(ConfigError):
            load_config(colour="blue")

    def test_parse_mode(self):
        assert parse_mode("auto") is None
        assert parse_mode("Exact") is SolveMode.EXACT
        with pytest.raises(ConfigError):
            parse_mode("fastest")
