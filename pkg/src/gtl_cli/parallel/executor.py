"""Process pool for the loop search."""

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Generic, Iterator, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def get_worker_count(n_requested: int) -> int:
    """
    Resolve a ``-n/--threads`` value.

    -1 (or any negative value) means every CPU, 0 means one worker, and
    larger requests are capped at the CPU count.
    """
    cpus = os.cpu_count() or 1
    if n_requested < 0:
        return cpus
    return max(1, min(n_requested, cpus))


class ParallelExecutor(Generic[T, R]):
    """
    Ordered map over a process pool.

    ``func`` must be a module-level function so workers can unpickle it.
    With one worker, or one item, everything runs in the calling process.
    """

    def __init__(self, func: Callable[[T], R], n_workers: int = 1):
        self.func = func
        self.n_workers = get_worker_count(n_workers)

    def map_ordered(self, items: Sequence[T]) -> Iterator[R]:
        """
        Yield ``func(item)`` for each item, in input order.

        Closing the iterator early cancels tasks that have not started, so a
        search can stop at its first hit.
        """
        if self.n_workers == 1 or len(items) <= 1:
            yield from map(self.func, items)
            return

        pool = ProcessPoolExecutor(max_workers=min(self.n_workers, len(items)))
        try:
            pending = [pool.submit(self.func, item) for item in items]
            for future in pending:
                yield future.result()
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
