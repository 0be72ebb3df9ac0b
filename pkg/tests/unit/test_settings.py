"""Unit tests for environment-driven settings."""

import pytest
from pydantic import ValidationError

from frobenius_checker.config import Settings, get_settings
from frobenius_checker.models.request import RunConfig


class TestSettings:
    @pytest.fixture(autouse=True)
    def fresh_settings(self):
        get_settings.cache_clear()
        yield
        get_settings.cache_clear()

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("FROBENIUS_SAMPLES", raising=False)
        settings = Settings(_env_file=None)
        assert settings.samples == 100
        assert settings.seed == 7
        assert settings.max_set_size == 4

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("FROBENIUS_SAMPLES", "12")
        monkeypatch.setenv("FROBENIUS_OUTPUT_MODE", "machine")
        settings = get_settings()
        assert settings.samples == 12
        assert settings.output_mode == "machine"

    def test_rejects_negative_samples(self, monkeypatch):
        monkeypatch.setenv("FROBENIUS_SAMPLES", "-1")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    def test_only_checker_fields(self):
        assert set(Settings.model_fields) == {
            "log_level",
            "log_format",
            "output_mode",
            "brute_force_budget",
            "samples",
            "seed",
            "max_set_size",
            "max_vect_dim",
            "sampling_retries",
            "nat_search_budget",
            "exhaustive_limit",
            "sampling_trials",
        }


class TestRunConfig:
    def test_corpus_needs_no_source(self):
        config = RunConfig(command="corpus")
        assert config.input_path is None
        assert config.output == "human"

    def test_generator_label(self):
        config = RunConfig(command="decide", target="set", generator=" idmon ")
        assert config.source_label == "gen:idmon"

    @pytest.mark.parametrize(
        "fields",
        [
            {"command": "decide", "target": "set"},
            {"command": "decide", "target": "set", "generator": "idmon", "input_path": "x.cat"},
            {"command": "decide", "target": "mod", "generator": "idmon"},
            {"command": "oracle", "target": "mod", "generator": "idmon"},
            {"command": "decide", "generator": "idmon"},
            {"command": "validate", "generator": "  "},
            {"command": "oracle", "target": "mod", "generator": "idmon", "p": 1},
        ],
    )
    def test_rejects(self, fields):
        with pytest.raises(ValidationError):
            RunConfig(**fields)
