"""Parallel processing utilities."""

from gtl_cli.parallel.executor import ParallelExecutor, get_worker_count

__all__ = ["ParallelExecutor", "get_worker_count"]
