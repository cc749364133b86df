"""Logging and warning control for the gtl engines and CLI."""

import logging
import sys
from contextlib import contextmanager

LOGGER_NAME = "gtl"

_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
    "critical": logging.CRITICAL,
}

# Track whether warnings are suppressed globally
_warnings_suppressed = False
_app_warnings_suppressed = False


def get_logger() -> logging.Logger:
    """Package logger, with a stderr handler attached on first use."""
    logger = logging.getLogger(LOGGER_NAME)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)
        logger.propagate = False
        logger.setLevel(logging.WARNING)
    return logger


def set_log_level(level: str = "warning"):
    """
    Set the engine log level.

    Args:
        level: One of 'debug', 'info', 'warning', 'error', 'critical'
    """
    level_lower = level.lower()
    if level_lower not in _LEVELS:
        raise ValueError(f"Unknown log level: {level}")
    get_logger().setLevel(_LEVELS[level_lower])


@contextmanager
def log_level(level: str = "error"):
    """
    Context manager to temporarily set the engine log level.

    Example:
        with log_level("debug"):
            decide(parse("F (p -> X p)"))
    """
    logger = get_logger()
    previous = logger.level
    try:
        set_log_level(level)
        yield
    finally:
        logger.setLevel(previous)


def suppress_warnings():
    """Hide engine warnings (e.g. quotient precondition violations)."""
    global _warnings_suppressed
    get_logger().setLevel(logging.ERROR)
    _warnings_suppressed = True


def enable_warnings():
    global _warnings_suppressed
    get_logger().setLevel(logging.WARNING)
    _warnings_suppressed = False


def suppress_app_warnings():
    """Suppress application warnings printed by commands."""
    global _app_warnings_suppressed
    _app_warnings_suppressed = True


def enable_app_warnings():
    """Enable application warnings."""
    global _app_warnings_suppressed
    _app_warnings_suppressed = False


def are_warnings_suppressed() -> bool:
    return _warnings_suppressed


def are_app_warnings_suppressed() -> bool:
    """Check if application warnings are currently suppressed."""
    return _app_warnings_suppressed


def configure_all_warnings(suppress: bool = True):
    """
    Configure both engine and application warnings.

    Args:
        suppress: If True, suppress all warnings
    """
    if suppress:
        suppress_warnings()
        suppress_app_warnings()
    else:
        enable_warnings()
        enable_app_warnings()


def warn(message: str):
    """Print an application warning to stderr unless suppressed."""
    if not _app_warnings_suppressed:
        print(f"Warning: {message}", file=sys.stderr)
