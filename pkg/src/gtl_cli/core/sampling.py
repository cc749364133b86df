"""Random models and formulas for property checks and counterexample search."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from gtl_cli.core.formula import (
    BOTTOM,
    And,
    Coimplies,
    Eventually,
    Formula,
    Henceforth,
    Implies,
    Next,
    Or,
    Var,
    closure,
    variables,
)
from gtl_cli.core.semantics import BiModel, PeriodicFlow, RealModel, real_table

logger = logging.getLogger("gtl.sampling")

_BINARY = (And, Or, Implies, Coimplies)
_UNARY = (Next, Eventually, Henceforth)


def random_flow(rng: np.random.Generator, max_states: int) -> PeriodicFlow:
    states = int(rng.integers(1, max_states + 1))
    return PeriodicFlow(states, int(rng.integers(0, states)))


def random_real_model(
    names: Sequence[str],
    rng: np.random.Generator,
    max_states: int = 4,
    denominator: int = 8,
) -> RealModel:
    """
    Random real model with values ``k / denominator``.

    Args:
        names: Variables to value
        rng: numpy random generator
        max_states: Largest number of states
        denominator: Common denominator of every value
    """
    flow = random_flow(rng, max_states)
    valuation = {
        name: tuple(
            Fraction(int(k), denominator)
            for k in rng.integers(0, denominator + 1, size=flow.state_count)
        )
        for name in names
    }
    return RealModel(flow, valuation)


def random_bimodel(
    names: Sequence[str],
    rng: np.random.Generator,
    max_worlds: int = 4,
    max_states: int = 4,
) -> BiModel:
    """Random bi-relational model; every variable holds below a random height per state."""
    worlds = int(rng.integers(1, max_worlds + 1))
    flow = random_flow(rng, max_states)
    heights = {
        name: [int(h) for h in rng.integers(0, worlds + 1, size=flow.state_count)]
        for name in names
    }
    return BiModel.from_heights(worlds, flow, heights)


def _grow(rng: np.random.Generator, names: Sequence[str], size: int) -> Formula:
    if size <= 1:
        # Mostly variables, occasionally falsum
        if rng.random() < 0.1:
            return BOTTOM
        return Var(names[int(rng.integers(0, len(names)))])
    if size == 2 or rng.random() < 0.35:
        op = _UNARY[int(rng.integers(0, len(_UNARY)))]
        return op(_grow(rng, names, size - 1))
    left = int(rng.integers(1, size - 1))
    op = _BINARY[int(rng.integers(0, len(_BINARY)))]
    return op(_grow(rng, names, left), _grow(rng, names, size - 1 - left))


def random_formula(
    rng: np.random.Generator,
    names: Sequence[str] = ("p", "q"),
    max_closure: int = 8,
) -> Formula:
    """Random formula whose closure has at most ``max_closure`` members."""
    if max_closure < 1:
        raise ValueError("max_closure must be positive")
    if not names:
        raise ValueError("At least one variable name is required")
    # Node count bounds the closure size
    return _grow(rng, names, int(rng.integers(1, max_closure + 1)))


@dataclass(frozen=True)
class Counterexample:
    """A model and state where a formula takes a value below 1."""

    model: RealModel
    state: int
    value: Fraction


def sample_check(
    f: Formula,
    n: int = 200,
    seed: Optional[int] = None,
    max_states: int = 4,
    denominator: int = 8,
    quiet: bool = True,
) -> Optional[Counterexample]:
    """
    Evaluate ``f`` on ``n`` random real models.

    Returns:
        The first counterexample found, or None if ``f`` was 1 everywhere
    """
    from gtl_cli.progress.ninja import NinjaProgress

    if n < 0:
        raise ValueError("Number of models must be non-negative")
    rng = np.random.default_rng(seed)
    sigma = closure(f)
    names = sorted(variables(f))

    progress = NinjaProgress(total=n, label="sampling", unit="models", quiet=quiet)
    progress.start()
    try:
        for i in range(n):
            m = random_real_model(names, rng, max_states=max_states, denominator=denominator)
            progress.update()
            for t, value in enumerate(real_table(m, sigma)[f]):
                if value != 1:
                    logger.debug("counterexample after %d models", i + 1)
                    progress.note("counterexample found")
                    return Counterexample(m, t, value)
    finally:
        progress.finish()
    return None
