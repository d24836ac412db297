"""Tests for configuration loading."""

from __future__ import annotations

import logging

import pytest
from pydantic import ValidationError

from qmac.config import load_config, resolve_threads
from qmac.constants import DEFAULT_COMPUTE_MAX_N, THREADS_ENV_VAR
from qmac.models import OutputFormat, QmacConfig


class TestLoadConfig:
    def test_default_config(self, tmp_path):
        config = load_config(str(tmp_path / "nonexistent.yml"))
        assert isinstance(config, QmacConfig)
        assert config.compute_max_n == DEFAULT_COMPUTE_MAX_N

    def test_default_values(self):
        config = QmacConfig()
        assert config.verify_max_n == 6
        assert config.enumeration_max_n == 10
        assert config.threads is None
        assert config.output_format is OutputFormat.TEXT
        assert config.cache_dir is None

    def test_yaml_values(self, config_file):
        path = config_file("compute_max_n: 5\noutput_format: latex\nthreads: 2\n")
        config = load_config(path)
        assert config.compute_max_n == 5
        assert config.output_format is OutputFormat.LATEX
        assert config.threads == 2

    def test_empty_file(self, config_file):
        assert load_config(config_file("")) == QmacConfig()

    def test_non_mapping(self, config_file, caplog):
        with caplog.at_level(logging.WARNING, logger="qmac.config"):
            assert load_config(config_file("- 1\n- 2\n")) == QmacConfig()
        assert "expected a mapping" in caplog.text

    def test_non_string_keys_are_unknown(self, config_file):
        assert load_config(config_file("1: 2\nseed: 7\n")).seed == 7

    def test_unknown_keys_dropped(self, config_file, caplog):
        path = config_file("verify_max_n: 4\nrisk_threshold: 50\n")
        with caplog.at_level(logging.WARNING, logger="qmac.config"):
            config = load_config(path)
        assert config.verify_max_n == 4
        assert "risk_threshold" in caplog.text

    def test_invalid_value(self, config_file):
        with pytest.raises(ValidationError):
            load_config(config_file("compute_max_n: 0\n"))

    def test_invalid_after_stripping_falls_back(self, config_file):
        config = load_config(config_file("compute_max_n: 0\nbogus: 1\n"))
        assert config == QmacConfig()


class TestThreads:
    def test_env_override(self, config_file, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "3")
        config = load_config(config_file("threads: 1\n"))
        assert config.threads == 3

    @pytest.mark.parametrize("value", ["many", "0", "-2"])
    def test_bad_env_ignored(self, config_file, monkeypatch, value):
        monkeypatch.setenv(THREADS_ENV_VAR, value)
        config = load_config(config_file("threads: 2\n"))
        assert config.threads == 2

    def test_resolve_explicit(self):
        assert resolve_threads(QmacConfig(threads=5)) == 5

    def test_resolve_default(self):
        assert 1 <= resolve_threads(QmacConfig()) <= 8

    def test_threads_must_be_positive(self):
        with pytest.raises(ValidationError):
            QmacConfig(threads=0)
