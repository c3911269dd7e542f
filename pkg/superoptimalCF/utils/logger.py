"""
Logging utilities for the application
Diagnostics go to stderr so stdout stays machine-readable
"""
import logging
import sys

from ..config.settings import Settings


def setup_logger(name=Settings.LOGGER_NAME, level=None):
    """
    Set up a logger with consistent formatting

    Args:
        name (str): Logger name
        level: Logging level (default: Settings.LOG_LEVEL)

    Returns:
        logging.Logger: Configured logger instance
    """
    level = level if level is not None else Settings.LOG_LEVEL
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Avoid adding handlers multiple times
    if logger.handlers:
        for handler in logger.handlers:
            handler.setLevel(level)
        return logger

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)

    # Formatter
    formatter = logging.Formatter(
        '[%(asctime)s] %(levelname)s %(name)s - %(message)s',
        datefmt='%H:%M:%S'
    )
    console_handler.setFormatter(formatter)

    logger.addHandler(console_handler)

    return logger
