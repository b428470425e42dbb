#!/usr/bin/env python
"""
test_pst_logger.py - Unit Tests for Logging Module

Tests cover:
- Logger initialization
- Log level configuration
- File logging with rotation
- Console output on stderr
"""

import pytest
import io
import logging
import logging.handlers
from pathlib import Path
import sys

# Add project to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from pst_network.pst_logger import BACKUP_COUNT, MAX_BYTES, get_logger, reset_logger, setup_logger


@pytest.fixture
def logger_name(request):
    """Unique logger name per test, handlers removed afterwards"""
    name = f"pst_test_{request.node.name}"
    yield name
    reset_logger(name)


@pytest.mark.unit
class TestLoggerSetup:
    """Test logger setup and configuration"""

    def test_setup_logger_returns_logger(self, logger_name):
        logger = setup_logger(name=logger_name, log_level=logging.INFO)

        assert isinstance(logger, logging.Logger)
        assert logger.name == logger_name
        assert logger.level == logging.INFO
        assert logger.propagate is False

    def test_console_only_without_log_dir(self, logger_name):
        logger = setup_logger(name=logger_name)

        assert len(logger.handlers) == 1
        assert not any(isinstance(h, logging.FileHandler) for h in logger.handlers)

    def test_file_handler_rotates(self, logger_name, tmp_path):
        logger = setup_logger(name=logger_name, log_dir=str(tmp_path), log_level="INFO")
        rotating = [h for h in logger.handlers if isinstance(h, logging.handlers.RotatingFileHandler)]

        logger.info("Test message")

        assert len(rotating) == 1
        assert rotating[0].maxBytes == MAX_BYTES
        assert rotating[0].backupCount == BACKUP_COUNT
        log_files = list(tmp_path.glob("*.log"))
        assert len(log_files) == 1
        assert "Test message" in log_files[0].read_text(encoding="utf-8")

    def test_level_names_accepted(self, logger_name):
        assert setup_logger(name=logger_name, log_level="debug").level == logging.DEBUG

    def test_unknown_level(self, logger_name):
        with pytest.raises(ValueError):
            setup_logger(name=logger_name, log_level="LOUD")

    def test_no_duplicate_handlers(self, logger_name):
        """Second setup only adjusts the level"""
        setup_logger(name=logger_name, log_level=logging.WARNING)
        logger = setup_logger(name=logger_name, log_level=logging.DEBUG)

        assert len(logger.handlers) == 1
        assert logger.handlers[0].level == logging.DEBUG

    def test_console_stream(self, logger_name):
        stream = io.StringIO()
        logger = setup_logger(name=logger_name, log_level=logging.WARNING, stream=stream)

        logger.info("hidden")
        logger.warning("shown")

        assert "shown" in stream.getvalue()
        assert "hidden" not in stream.getvalue()


@pytest.mark.unit
class TestGetLogger:
    """Test logger lookup and reset"""

    def test_get_logger_sets_up_new_logger(self, logger_name):
        logger = get_logger(logger_name)

        assert logger.handlers

    def test_child_of_root_logger_is_not_configured(self):
        """Module loggers propagate to the package logger"""
        logger = get_logger("pst_network.pst_graph")

        assert logger.handlers == []

    def test_reset_removes_handlers(self, logger_name, tmp_path):
        setup_logger(name=logger_name, log_dir=str(tmp_path))

        reset_logger(logger_name)

        assert logging.getLogger(logger_name).handlers == []
