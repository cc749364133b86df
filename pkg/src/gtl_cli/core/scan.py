"""Exhaustive scan of small bi-relational models."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from gtl_cli.core.formula import Formula, closure, variables
from gtl_cli.core.semantics import BiModel, PeriodicFlow, bi_heights

logger = logging.getLogger("gtl.scan")


def iter_bimodels(names: Sequence[str], max_worlds: int, max_states: int) -> Iterator[BiModel]:
    """
    Every bi-relational model up to the given size.

    Covers every world count, state count and loopback, and every
    downward-closed valuation of ``names``, smallest models first.
    """
    if max_worlds < 1 or max_states < 1:
        raise ValueError("max_worlds and max_states must be positive")
    for worlds in range(1, max_worlds + 1):
        for states in range(1, max_states + 1):
            rows = list(itertools.product(range(worlds + 1), repeat=states))
            for loopback in range(states):
                flow = PeriodicFlow(states, loopback)
                for choice in itertools.product(rows, repeat=len(names)):
                    yield BiModel.from_heights(worlds, flow, dict(zip(names, choice)))


@dataclass(frozen=True)
class ScanResult:
    """Number of models checked and the first one the formula fails on."""

    checked: int
    counterexample: Optional[BiModel] = None

    @property
    def globally_true(self) -> bool:
        return self.counterexample is None


def scan_globally_true(f: Formula, max_worlds: int = 3, max_states: int = 4) -> ScanResult:
    """Check that ``f`` is globally true on every model up to the given size."""
    sigma = closure(f)
    checked = 0
    for m in iter_bimodels(sorted(variables(f)), max_worlds, max_states):
        checked += 1
        if any(h != m.world_count for h in bi_heights(m, sigma)[f]):
            logger.debug("counterexample after %d models", checked)
            return ScanResult(checked, m)
    logger.debug("globally true on %d models", checked)
    return ScanResult(checked)
