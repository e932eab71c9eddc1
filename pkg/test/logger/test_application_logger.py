"""
Unit tests for the structured event logger.
"""

import logging
from pathlib import Path

import pytest

from app.utils.logger.application_logger import ApplicationLogger


@pytest.fixture
def event_logger(tmp_path: Path) -> ApplicationLogger:
    return ApplicationLogger(name=f"test.events.{tmp_path.name}", logger_level=logging.DEBUG, log_to_console=False,
                             log_to_file=True, log_dir=str(tmp_path / "logs"))


class TestLogEvent:
    """Tests for key=value event lines."""

    def test_fields_follow_event_name(self, event_logger: ApplicationLogger, caplog):
        """Fields are appended in call order with floats at six significant digits."""
        # Act
        with caplog.at_level(logging.INFO, logger=event_logger.logger.name):
            event_logger.log_event("round_completed", round=3, u_b=1.0 / 3.0, channels=[0, 1])

        # Assert
        assert caplog.messages[-1] == "round_completed round=3 u_b=0.333333 channels=[0,1]"

    def test_bound_context_comes_first(self, event_logger: ApplicationLogger, caplog):
        """A bound logger prefixes its context and leaves the parent untouched."""
        # Arrange
        bound = event_logger.bind(component="WsnSolverService")

        # Act
        with caplog.at_level(logging.INFO, logger=event_logger.logger.name):
            bound.log_event("fallback", tag=2)
            event_logger.log_event("fallback", tag=2)

        # Assert
        assert caplog.messages[-2:] == ["fallback component=WsnSolverService tag=2", "fallback tag=2"]

    def test_disabled_level_is_skipped(self, event_logger: ApplicationLogger, caplog):
        """Nothing is emitted below the logger's level."""
        # Arrange
        event_logger.logger.setLevel(logging.WARNING)

        # Act
        with caplog.at_level(logging.WARNING, logger=event_logger.logger.name):
            event_logger.log_event("round_completed", round=1)

        # Assert
        assert caplog.messages == []


class TestHandlers:
    """Tests for handler setup."""

    def test_dated_log_file_is_created(self, event_logger: ApplicationLogger, tmp_path: Path):
        """The file handler writes under the configured directory."""
        # Assert
        assert list((tmp_path / "logs").glob("simulator_*.log"))
