"""Progress monitoring utilities."""

from gtl_cli.progress.ninja import NinjaProgress

__all__ = ["NinjaProgress"]
