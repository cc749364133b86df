"""Ninja-style progress reporting on stderr."""

import sys
import threading
import time
from typing import Optional, TextIO


class NinjaProgress:
    """
    One-line progress for the loop search and the samplers.

    Format: loop search [42/100] 42% | 15.3 classes/s | ETA: 3.8s | witness found
    """

    def __init__(
        self,
        total: int,
        label: str = "",
        unit: str = "it",
        quiet: bool = False,
        update_interval: float = 0.1,
        file: Optional[TextIO] = None,
    ):
        """
        Args:
            total: Number of units of work (loop candidates, sampled models)
            label: Phase name printed before the counter
            unit: Unit name used for the rate
            quiet: If True, suppress all output
            update_interval: Minimum seconds between redraws
            file: Stream to draw on (default: stderr)
        """
        self.total = max(total, 0)
        self.label = label
        self.unit = unit
        self.quiet = quiet
        self.update_interval = update_interval
        self._file = file or sys.stderr

        self._done = 0
        self._note = ""
        self._started: Optional[float] = None
        self._drawn_at = 0.0
        self._width = 0
        self._lock = threading.Lock()

    def start(self):
        self._started = time.perf_counter()
        self._draw()

    def update(self, n: int = 1):
        """Count ``n`` more finished units."""
        with self._lock:
            self._done += n
            now = time.perf_counter()
            if now - self._drawn_at >= self.update_interval:
                self._draw()
                self._drawn_at = now

    def note(self, text: str):
        """Show ``text`` after the counters until replaced."""
        with self._lock:
            self._note = text
            self._draw()

    def finish(self):
        with self._lock:
            self._draw(final=True)
            if not self.quiet:
                self._file.write("\n")
                self._file.flush()

    @property
    def completed(self) -> int:
        return self._done

    @property
    def elapsed_time(self) -> float:
        if self._started is None:
            return 0.0
        return time.perf_counter() - self._started

    def _line(self, final: bool) -> str:
        elapsed = self.elapsed_time
        rate = self._done / elapsed if elapsed > 0 else 0.0
        percent = 100.0 if self.total == 0 else 100.0 * self._done / self.total

        counter = f"[{self._done}/{self.total}] {percent:.0f}%"
        parts = [f"{self.label} {counter}" if self.label else counter, f"{rate:.1f} {self.unit}/s"]
        left = self.total - self._done
        if final:
            parts.append(f"Elapsed: {self._format_time(elapsed)}")
        elif rate > 0 and left > 0:
            parts.append(f"ETA: {self._format_time(left / rate)}")
        if self._note:
            parts.append(self._note)
        return " | ".join(parts)

    def _draw(self, final: bool = False):
        if self.quiet:
            return
        line = self._line(final)
        self._file.write("\r" + line.ljust(self._width))
        self._file.flush()
        self._width = len(line)

    @staticmethod
    def _format_time(seconds: float) -> str:
        if seconds < 60:
            return f"{seconds:.1f}s"
        if seconds < 3600:
            return f"{int(seconds // 60)}m {seconds % 60:.0f}s"
        return f"{int(seconds // 3600)}h {int((seconds % 3600) // 60)}m"
