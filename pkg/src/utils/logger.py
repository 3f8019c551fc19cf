"""
Logging utilities for renorm-lab
"""

import logging
import os
import platform
import re
import sys
from pathlib import Path
from typing import Optional

LOG_FORMAT = "%(asctime)s | %(name)s | %(levelname)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class ConsoleFormatter(logging.Formatter):
    """Formatter that removes status glyphs on Windows consoles"""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.is_windows = platform.system() == "Windows"
        self.glyph_pattern = re.compile(
            "["
            "\U0001F300-\U0001F6FF"  # pictographs
            "\U00002702-\U000027B0"  # dingbats
            "\U00002600-\U000026FF"  # misc symbols
            "]+",
            flags=re.UNICODE,
        )

    def format(self, record):
        formatted = super().format(record)
        if self.is_windows:
            formatted = self.glyph_pattern.sub("", formatted)
            formatted = re.sub(r"\s+", " ", formatted).strip()
        return formatted


def _resolve_level(level: Optional[str]) -> int:
    name = (level or os.environ.get("RENORM_LOG_LEVEL") or "INFO").upper()
    return getattr(logging, name, logging.INFO)


def setup_logger(
    name: str, log_dir: Optional[Path] = None, level: Optional[str] = None
) -> logging.Logger:
    """
    Set up a logger with a console handler and a per-name log file

    Args:
        name: Logger name, also the log file stem
        log_dir: Directory for the log file; RENORM_LOG_DIR or ``logs`` by default
        level: Console level name; RENORM_LOG_LEVEL or INFO by default
    """
    logger = logging.getLogger(name)

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    logger.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(_resolve_level(level))
    console_handler.setFormatter(ConsoleFormatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(console_handler)

    directory = Path(log_dir or os.environ.get("RENORM_LOG_DIR") or "logs")
    directory.mkdir(parents=True, exist_ok=True)

    file_handler = logging.FileHandler(directory / f"{name}.log", encoding="utf-8")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(file_handler)

    return logger


def log_record(record, log_dir: Optional[Path] = None) -> None:
    """Log one convergence record to the ``records`` log in log_dir"""
    logger = logging.getLogger("records")
    if not logger.handlers:
        setup_logger("records", log_dir=log_dir)

    logger.info(
        f"RECORD | n={record.n} | t={record.t} | err={record.err:.6e} "
        f"| mean_err={record.mean_err:.6e} | {record.seconds:.3f}s"
    )


def log_experiment_summary(
    kind: str,
    final_error: float,
    seconds: float,
    passed: Optional[bool] = None,
    log_dir: Optional[Path] = None,
) -> None:
    """Log the one-line summary of a finished experiment to the ``experiments`` log"""
    logger = logging.getLogger("experiments")
    if not logger.handlers:
        setup_logger("experiments", log_dir=log_dir)

    status = "n/a" if passed is None else ("pass" if passed else "FAIL")
    logger.info(
        f"EXPERIMENT | {kind} | final error: {final_error:.6e} "
        f"| runtime: {seconds:.3f}s | check: {status}"
    )
