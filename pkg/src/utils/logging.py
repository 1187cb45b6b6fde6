"""Logging for design runs: console and optional file output, captured numerical warnings, step timing."""

import logging
import os
import sys
import time
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Iterator, List, Optional

from .config import get_config
from .exceptions import ConfigError

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _level(value: str) -> int:
    name = str(value).strip().upper()
    if name not in LEVELS:
        raise ConfigError(f"unknown level {value!r}; expected one of {', '.join(LEVELS)}", "LOG_LEVEL")
    return getattr(logging, name)


def _handlers(log_file: Optional[str], console: bool) -> List[logging.Handler]:
    formatter = logging.Formatter(LOG_FORMAT)
    handlers: List[logging.Handler] = []

    if log_file:
        log_path = Path(log_file)
        os.makedirs(log_path.parent, exist_ok=True)
        # one file per run
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        handlers.append(logging.FileHandler(log_path.parent / f"{log_path.stem}_{timestamp}{log_path.suffix}"))

    if console:
        # stdout only; stderr carries the single error line of a failed run
        handlers.append(logging.StreamHandler(sys.stdout))

    for handler in handlers:
        handler.setFormatter(formatter)
    return handlers


def setup_logging(
    name: str = "qpm_designer",
    log_level: Optional[str] = None,
    log_file: Optional[str] = None,
    console: bool = True,
) -> logging.Logger:
    """
    Configure the package logger.

    Warnings raised through the ``warnings`` module (scipy's IntegrationWarning,
    numpy's RuntimeWarning) are captured and written to the same handlers.

    Args:
        name (str): Logger name
        log_level (str, optional): Level name, default from LOG_LEVEL or INFO
        log_file (str, optional): Log file, default from LOG_FILE; a timestamp is added to the stem
        console (bool): Whether to log to stdout

    Returns:
        logging.Logger: Configured logger

    Raises:
        ConfigError: If the level name is unknown
    """
    config = get_config()
    level = _level(log_level or config.get_env("LOG_LEVEL", "INFO"))
    if log_file is None:
        log_file = config.get_env("LOG_FILE")

    handlers = _handlers(log_file, console)

    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.handlers = handlers

    logging.captureWarnings(True)
    warnings_logger = logging.getLogger("py.warnings")
    warnings_logger.handlers = list(handlers)
    warnings_logger.propagate = False

    return logger


# Global logger instance
_logger = None


def get_logger() -> logging.Logger:
    """Shared package logger, configured from the environment on first use."""
    global _logger
    if _logger is None:
        try:
            _logger = setup_logging()
        except ConfigError:
            # modules import this before main() can report the error
            _logger = setup_logging(log_level="INFO")
    return _logger


@contextmanager
def log_duration(label: str, logger: Optional[logging.Logger] = None) -> Iterator[None]:
    """
    Log the start and wall-clock duration of a block.

    Args:
        label (str): Step name used in both messages
        logger (logging.Logger, optional): Defaults to the package logger
    """
    logger = logger or get_logger()
    start = time.time()
    logger.info(f"Running '{label}'")
    yield
    logger.info(f"'{label}' finished in {time.time() - start:.2f} seconds")
