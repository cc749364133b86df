"""Utility functions."""

from gtl_cli.utils.logging import (
    set_log_level,
    log_level,
    get_logger,
    suppress_warnings,
    enable_warnings,
    are_warnings_suppressed,
    suppress_app_warnings,
    enable_app_warnings,
    are_app_warnings_suppressed,
    configure_all_warnings,
    warn,
)
from gtl_cli.utils.output import emit, envelope

__all__ = [
    "set_log_level",
    "log_level",
    "get_logger",
    "suppress_warnings",
    "enable_warnings",
    "are_warnings_suppressed",
    "suppress_app_warnings",
    "enable_app_warnings",
    "are_app_warnings_suppressed",
    "configure_all_warnings",
    "warn",
    "emit",
    "envelope",
]
