"""
Unit tests for logger utilities
"""

import logging
import uuid

import pytest

from renorm import ConvergenceRecord
from utils.logger import ConsoleFormatter, log_experiment_summary, log_record, setup_logger


@pytest.fixture
def logger_name():
    """A fresh logger name; handlers are closed afterwards"""
    name = f"test_logger_{uuid.uuid4().hex[:8]}"
    yield name
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)


class TestSetupLogger:
    """Test cases for setup_logger"""

    def test_setup_logger_creates_handlers(self, logger_name, tmp_path):
        """Test that setup_logger adds a console and a file handler"""
        logger = setup_logger(logger_name, log_dir=tmp_path)

        assert logger.name == logger_name
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 2
        assert (tmp_path / f"{logger_name}.log").exists()

    def test_setup_logger_no_duplicate_handlers(self, logger_name, tmp_path):
        """Test that calling setup_logger twice doesn't create duplicate handlers"""
        first = setup_logger(logger_name, log_dir=tmp_path)
        second = setup_logger(logger_name, log_dir=tmp_path)

        assert first is second
        assert len(second.handlers) == 2

    def test_console_level_argument(self, logger_name, tmp_path):
        """Test explicit console level"""
        logger = setup_logger(logger_name, log_dir=tmp_path, level="warning")

        console = next(h for h in logger.handlers if not isinstance(h, logging.FileHandler))
        assert console.level == logging.WARNING

    def test_console_level_from_environment(self, logger_name, tmp_path, monkeypatch):
        """Test RENORM_LOG_LEVEL when no level is given"""
        monkeypatch.setenv("RENORM_LOG_LEVEL", "ERROR")
        logger = setup_logger(logger_name, log_dir=tmp_path)

        console = next(h for h in logger.handlers if not isinstance(h, logging.FileHandler))
        assert console.level == logging.ERROR

    def test_log_directory_from_environment(self, logger_name, tmp_path, monkeypatch):
        """Test RENORM_LOG_DIR when no directory is given"""
        monkeypatch.setenv("RENORM_LOG_DIR", str(tmp_path / "env_logs"))
        setup_logger(logger_name)

        assert (tmp_path / "env_logs" / f"{logger_name}.log").exists()

    def test_file_handler_captures_debug(self, logger_name, tmp_path):
        """Test that the log file receives debug lines"""
        logger = setup_logger(logger_name, log_dir=tmp_path, level="ERROR")
        logger.debug("scan started")
        for handler in logger.handlers:
            handler.flush()

        content = (tmp_path / f"{logger_name}.log").read_text(encoding="utf-8")
        assert "scan started" in content
        assert "| DEBUG |" in content


class TestConsoleFormatter:
    """Test cases for ConsoleFormatter"""

    def test_formats_message(self):
        """Test that ordinary messages survive formatting"""
        formatter = ConsoleFormatter("%(message)s")
        record = logging.LogRecord("x", logging.INFO, __file__, 1, "plain message", None, None)

        assert "plain message" in formatter.format(record)


class TestStructuredLines:
    """Test cases for record and summary lines"""

    def test_log_record(self, caplog):
        """Test the convergence record line"""
        record = ConvergenceRecord(n=1000, t=1 + 0j, err=1.5e-3, mean_err=2e-4, seconds=0.25)

        with caplog.at_level(logging.INFO, logger="records"):
            log_record(record)

        assert "RECORD | n=1000" in caplog.text
        assert "err=1.500000e-03" in caplog.text
        assert "mean_err=2.000000e-04" in caplog.text

    @pytest.mark.parametrize(
        "passed,status", [(True, "check: pass"), (False, "check: FAIL"), (None, "check: n/a")]
    )
    def test_log_experiment_summary(self, caplog, passed, status):
        """Test the experiment summary line"""
        with caplog.at_level(logging.INFO, logger="experiments"):
            log_experiment_summary("scan", 1.2e-4, 0.5, passed)

        assert "EXPERIMENT | scan | final error: 1.200000e-04" in caplog.text
        assert status in caplog.text


@pytest.fixture
def fresh_structured_loggers():
    """Detach the records/experiments handlers so the next call sets them up again"""
    saved = {}
    for name in ("records", "experiments"):
        logger = logging.getLogger(name)
        saved[name] = list(logger.handlers)
        for handler in saved[name]:
            logger.removeHandler(handler)
    yield
    for name, handlers in saved.items():
        logger = logging.getLogger(name)
        for handler in list(logger.handlers):
            handler.close()
            logger.removeHandler(handler)
        for handler in handlers:
            logger.addHandler(handler)


class TestStructuredLogDirectory:
    """Test cases for record and summary files in a configured directory"""

    def test_log_record_file_in_directory(self, fresh_structured_loggers, tmp_path):
        record = ConvergenceRecord(n=10, t=1 + 0j, err=1e-2, mean_err=0.0, seconds=0.0)
        log_record(record, log_dir=tmp_path)
        for handler in logging.getLogger("records").handlers:
            handler.flush()

        assert "RECORD | n=10" in (tmp_path / "records.log").read_text(encoding="utf-8")

    def test_summary_file_in_directory(self, fresh_structured_loggers, tmp_path):
        log_experiment_summary("exp", 0.0, 0.1, True, log_dir=tmp_path)
        for handler in logging.getLogger("experiments").handlers:
            handler.flush()

        content = (tmp_path / "experiments.log").read_text(encoding="utf-8")
        assert "EXPERIMENT | exp" in content
