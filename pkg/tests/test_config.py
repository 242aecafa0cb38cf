"""Tests for settings, logging and output writers."""

import json
import logging
import math

import pytest

from app.common.output import config_digest, format_value, header_line, write_json
from app.core import configure_logging
from app.core.config import Settings


@pytest.fixture
def root_logger():
    """Restore the root logger after a test."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield root
    root.handlers[:] = handlers
    root.setLevel(level)


class TestSettings:
    """Test toolkit settings."""

    def test_defaults(self):
        """Test numerical defaults."""
        settings = Settings(_env_file=None)
        assert settings.EULER_TERMS == 38
        assert settings.KS_LEVEL == 0.01
        assert settings.STAT_Z_THRESHOLD == 4.0

    def test_environment_override(self, monkeypatch):
        """Test environment variables override defaults."""
        monkeypatch.setenv("SIM_THREADS", "3")
        assert Settings(_env_file=None).SIM_THREADS == 3

    def test_log_level_is_normalized(self):
        """Test log levels are upper-cased."""
        assert Settings(_env_file=None, LOG_LEVEL="debug").LOG_LEVEL == "DEBUG"


class TestConfigureLogging:
    """Test logging setup."""

    def test_single_handler(self, root_logger):
        """Test repeated calls install one handler and update the level."""
        configure_logging("info")
        configure_logging("warning")
        named = [h for h in root_logger.handlers if h.name == "inspected-levy"]
        assert len(named) == 1
        assert root_logger.level == logging.WARNING


class TestOutput:
    """Test output formatting and provenance."""

    def test_digest(self):
        """Test the digest is the SHA-256 of the text."""
        assert config_digest("") == (
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        )

    def test_header(self):
        """Test the provenance line."""
        assert header_line("ab", None) == "config_sha256=ab seed=none"
        assert header_line("ab", 7) == "config_sha256=ab seed=7"

    @pytest.mark.parametrize(
        ("value", "expected"),
        [
            (None, ""),
            (True, "true"),
            (3, "3"),
            (0.1, "0.10000000000000001"),
            (math.inf, "inf"),
            (math.nan, "nan"),
        ],
    )
    def test_format_value(self, value, expected):
        """Test fields are written with 17 significant digits."""
        assert format_value(value) == expected

    def test_json_report(self, tmp_path):
        """Test reports carry the header and sorted keys."""
        path = write_json(tmp_path / "r.json", "config_sha256=ab seed=1", {"b": math.inf, "a": [1.5]})
        document = json.loads(path.read_text(encoding="utf-8"))
        assert document == {"header": "config_sha256=ab seed=1", "a": [1.5], "b": "inf"}
        assert list(document) == ["a", "b", "header"]
