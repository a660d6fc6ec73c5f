"""Logging configuration for logz."""
import logging
import logging.handlers
import os
from typing import Optional, Union

# Logging format
log_format = (
    '[%(asctime)s] %(levelname)-8s [%(name)s] %(message)s'
)

_installed_handlers: list = []


def setup_logging(level: Union[int, str] = logging.INFO, log_file: Optional[str] = None):
    """Setup logging configuration.

    Console output goes to stderr so that commands printing JSON on stdout
    stay machine-readable.
    """
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    reset_logging()

    # Console handler
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter(log_format))
    root_logger.addHandler(console_handler)
    _installed_handlers.append(console_handler)

    # File handler with rotation
    if log_file:
        log_dir = os.path.dirname(os.path.abspath(log_file))
        os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=10
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(log_format))
        root_logger.addHandler(file_handler)
        _installed_handlers.append(file_handler)

    return root_logger


def reset_logging() -> None:
    """Remove the handlers installed by setup_logging."""
    root_logger = logging.getLogger()
    for handler in _installed_handlers:
        root_logger.removeHandler(handler)
        handler.close()
    _installed_handlers.clear()

