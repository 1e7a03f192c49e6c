"""Console logging in the ``[HH:mm:ss] message`` style."""
import logging
import sys
from typing import Optional

from PySide6.QtCore import QTime

ROOT_LOGGER = "kronholm"

_LEVELS = {
    "": logging.INFO,
    "info": logging.INFO,
    "blue": logging.DEBUG,
    "debug": logging.DEBUG,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


def get_logger(name: str) -> logging.Logger:
    if name == ROOT_LOGGER or name.startswith(ROOT_LOGGER + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


class TimestampFormatter(logging.Formatter):
    """Prefix each record with the wall-clock time, colour by level."""

    def __init__(self, color: bool = True):
        super().__init__()
        self.color = color

    def format(self, record: logging.LogRecord) -> str:
        from .settings import AppConfig

        current_time = QTime.currentTime().toString("HH:mm:ss")
        message = f"[{current_time}] {record.getMessage()}"
        if record.exc_info:
            message = f"{message}\n{self.formatException(record.exc_info)}"
        if self.color:
            code = AppConfig.LOG_COLORS.get(record.levelname, "")
            if code:
                message = f"{code}{message}{AppConfig.LOG_RESET}"
        return message


def setup_logging(level: int = logging.WARNING, color: Optional[bool] = None,
                  stream=None) -> logging.Logger:
    """Install a single stderr handler on the package logger."""
    stream = stream if stream is not None else sys.stderr
    if color is None:
        color = hasattr(stream, "isatty") and stream.isatty()
    logger = logging.getLogger(ROOT_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(stream)
    handler.setFormatter(TimestampFormatter(color=color))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


def add_log_item(message: str, level: str = "") -> None:
    """Log ``message`` at the named level (info / warning / error / blue)."""
    logging.getLogger(ROOT_LOGGER).log(_LEVELS.get(level, logging.INFO), message)
