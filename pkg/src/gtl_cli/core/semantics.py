"""Real-valued and bi-relational evaluation over ultimately periodic flows.

Both semantics are Gödel algebras on a finite chain: truth values are exact
rationals in [0, 1] for real models, and for bi-relational models the
extension of a formula at a state is a downward-closed prefix of the world
chain, i.e. a height in 0..worlds. The two evaluators therefore share one
bottom-up pass over the closure, parameterized by the top element.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, log2
from typing import Mapping, Sequence, TypeVar, Union

from gtl_cli.core.errors import ModelError, UnknownVariableError
from gtl_cli.core.formula import (
    OP_AND,
    OP_BOTTOM,
    OP_COIMPLIES,
    OP_EVENTUALLY,
    OP_HENCEFORTH,
    OP_IMPLIES,
    OP_NEXT,
    OP_OR,
    OP_VAR,
    Closure,
    Formula,
    closure,
)

logger = logging.getLogger("gtl.semantics")

V = TypeVar("V", int, Fraction)


@dataclass(frozen=True)
class PeriodicFlow:
    """States ``0..state_count-1``; the last state steps back to ``loopback``."""

    state_count: int
    loopback: int

    def __post_init__(self):
        if self.state_count < 1:
            raise ModelError("A flow needs at least one state")
        if not 0 <= self.loopback < self.state_count:
            raise ModelError(
                f"Loopback {self.loopback} outside states 0..{self.state_count - 1}"
            )

    def successor(self, t: int) -> int:
        return t + 1 if t < self.state_count - 1 else self.loopback

    def reachable(self, t: int) -> range:
        """States reachable from ``t`` in zero or more steps."""
        return range(min(t, self.loopback), self.state_count)

    @property
    def states(self) -> range:
        return range(self.state_count)


@dataclass(frozen=True)
class RealModel:
    """A flow with a rational valuation in [0, 1] per variable and state."""

    flow: PeriodicFlow
    valuation: Mapping[str, tuple[Fraction, ...]] = field(default_factory=dict)

    def __post_init__(self):
        values = {}
        for name, row in self.valuation.items():
            row = tuple(Fraction(v) for v in row)
            if len(row) != self.flow.state_count:
                raise ModelError(
                    f"Variable {name!r} has {len(row)} values, expected {self.flow.state_count}"
                )
            for v in row:
                if not 0 <= v <= 1:
                    raise ModelError(f"Value {v} of {name!r} is outside [0, 1]")
            values[name] = row
        object.__setattr__(self, "valuation", dict(sorted(values.items())))

    def is_crisp(self) -> bool:
        return all(v in (0, 1) for row in self.valuation.values() for v in row)


@dataclass(frozen=True)
class BiModel:
    """
    A bi-relational model over a world chain ``0 < 1 < ... < world_count-1``.

    ``valuation`` maps each variable to its set of (world, state) pairs and
    must be downward closed in the world coordinate.
    """

    world_count: int
    flow: PeriodicFlow
    valuation: Mapping[str, frozenset[tuple[int, int]]] = field(default_factory=dict)

    def __post_init__(self):
        if self.world_count < 1:
            raise ModelError("A bi-relational model needs at least one world")
        values = {}
        for name, pairs in self.valuation.items():
            pairs = frozenset((int(w), int(t)) for w, t in pairs)
            for w, t in pairs:
                if not 0 <= w < self.world_count or not 0 <= t < self.flow.state_count:
                    raise ModelError(f"Pair ({w}, {t}) of {name!r} is outside the model")
                if w > 0 and (w - 1, t) not in pairs:
                    raise ModelError(
                        f"Valuation of {name!r} is not downward closed: "
                        f"({w}, {t}) present but ({w - 1}, {t}) missing"
                    )
            values[name] = pairs
        object.__setattr__(self, "valuation", dict(sorted(values.items())))

    @classmethod
    def from_heights(
        cls, world_count: int, flow: PeriodicFlow, heights: Mapping[str, Sequence[int]]
    ) -> BiModel:
        """Build a model where variable ``p`` holds at worlds below ``heights[p][t]``."""
        valuation = {
            name: frozenset((w, t) for t, h in enumerate(row) for w in range(h))
            for name, row in heights.items()
        }
        return cls(world_count, flow, valuation)

    def heights(self, name: str) -> tuple[int, ...]:
        pairs = self.valuation[name]
        return tuple(
            sum(1 for w in range(self.world_count) if (w, t) in pairs)
            for t in self.flow.states
        )


Model = Union[RealModel, BiModel]


def _check_variables(sigma: Closure, defined: Mapping[str, object]) -> None:
    missing = [name for name in sigma.variable_names() if name not in defined]
    if missing:
        raise UnknownVariableError(missing)


def _evaluate(
    sigma: Closure,
    flow: PeriodicFlow,
    atoms: Mapping[str, Sequence[V]],
    top: V,
) -> list[tuple[V, ...]]:
    """Value of every closure formula at every state, over the chain 0..top."""
    zero = top * 0
    states = flow.states
    table: list[tuple[V, ...]] = []
    for f, (op, a, b) in zip(sigma.formulas, sigma.ops):
        if op == OP_BOTTOM:
            row = tuple(zero for _ in states)
        elif op == OP_VAR:
            row = tuple(atoms[f.name])  # type: ignore[attr-defined]
        elif op == OP_AND:
            row = tuple(min(x, y) for x, y in zip(table[a], table[b]))
        elif op == OP_OR:
            row = tuple(max(x, y) for x, y in zip(table[a], table[b]))
        elif op == OP_IMPLIES:
            row = tuple(top if x <= y else y for x, y in zip(table[a], table[b]))
        elif op == OP_COIMPLIES:
            row = tuple(x if x > y else zero for x, y in zip(table[a], table[b]))
        elif op == OP_NEXT:
            row = tuple(table[a][flow.successor(t)] for t in states)
        elif op == OP_EVENTUALLY:
            row = tuple(max(table[a][s] for s in flow.reachable(t)) for t in states)
        elif op == OP_HENCEFORTH:
            row = tuple(min(table[a][s] for s in flow.reachable(t)) for t in states)
        else:
            raise AssertionError(f"unknown op {op}")
        table.append(row)
    return table


def real_table(m: RealModel, sigma: Closure) -> dict[Formula, tuple[Fraction, ...]]:
    """
    Evaluate every formula of a closure at every state of a real model.

    Raises:
        UnknownVariableError: If a closure variable is not in the model
    """
    _check_variables(sigma, m.valuation)
    rows = _evaluate(sigma, m.flow, m.valuation, Fraction(1))
    return dict(zip(sigma.formulas, rows))


def bi_heights(m: BiModel, sigma: Closure) -> dict[Formula, tuple[int, ...]]:
    """
    Extension heights of every closure formula at every state.

    ``(w, t)`` satisfies the formula iff ``w < height[t]``.
    """
    _check_variables(sigma, m.valuation)
    atoms = {name: m.heights(name) for name in m.valuation}
    rows = _evaluate(sigma, m.flow, atoms, m.world_count)
    return dict(zip(sigma.formulas, rows))


def eval_real(m: RealModel, f: Formula, t: int) -> Fraction:
    """
    Truth value of a formula at state ``t`` of a real model.

    Args:
        m: Real model
        f: Formula to evaluate
        t: State index

    Returns:
        Exact rational in [0, 1]
    """
    if not 0 <= t < m.flow.state_count:
        raise ModelError(f"State {t} outside 0..{m.flow.state_count - 1}")
    return real_table(m, closure(f))[f][t]


def eval_bi(m: BiModel, f: Formula) -> frozenset[tuple[int, int]]:
    """Extension of a formula as a set of (world, state) pairs."""
    heights = bi_heights(m, closure(f))[f]
    return frozenset((w, t) for t, h in enumerate(heights) for w in range(h))


def is_globally_true(m: Model, f: Formula) -> bool:
    """True iff the formula takes the top value everywhere in the model."""
    if isinstance(m, RealModel):
        return all(v == 1 for v in real_table(m, closure(f))[f])
    return all(h == m.world_count for h in bi_heights(m, closure(f))[f])


def dyadic_embedding(points: Sequence[int]) -> dict[int, Fraction]:
    """
    Map sorted distinct integers onto dyadic rationals, first to 0 and last to 1.

    The i-th point goes to ``i / 2**k`` with ``2**k`` the least power of two
    at or above the number of gaps, except the last point which goes to 1.
    """
    r = len(points) - 1
    if r <= 0:
        return {points[0]: Fraction(0)} if points else {}
    denominator = 2 ** ceil(log2(r))
    rho = {p: Fraction(i, denominator) for i, p in enumerate(points)}
    rho[points[-1]] = Fraction(1)
    return rho


def realify(m: BiModel, sigma: Closure) -> RealModel:
    """
    Turn a finite bi-relational model into a real model agreeing on ``sigma``.

    Each pair (formula, state) is classified by its extension height; the
    heights that occur, together with 0 and the world count, are embedded
    order-preservingly into [0, 1] and variables take the image of their
    own height.
    """
    table = bi_heights(m, sigma)
    heights = {0, m.world_count}
    for row in table.values():
        heights.update(row)
    for name in m.valuation:
        heights.update(m.heights(name))
    rho = dyadic_embedding(sorted(heights))
    logger.debug("realify: %d height classes", len(rho))

    valuation = {
        name: tuple(rho[h] for h in m.heights(name)) for name in m.valuation
    }
    return RealModel(m.flow, valuation)


def bify_thresholds(m: RealModel, sigma: Closure) -> list[Fraction]:
    """Midpoints of the gaps between the values of ``sigma`` (and 0, 1)."""
    points = {Fraction(0), Fraction(1)}
    for row in real_table(m, sigma).values():
        points.update(row)
    ordered = sorted(points)
    return [(a + b) / 2 for a, b in zip(ordered, ordered[1:])]


def bify(m: RealModel, sigma: Closure) -> BiModel:
    """
    Turn a finite real model into a bi-relational model agreeing on ``sigma``.

    Worlds are the thresholds of :func:`bify_thresholds` in ascending order,
    and variable ``p`` holds at ``(x, t)`` iff ``V(p, t) > x``.
    """
    thresholds = bify_thresholds(m, sigma)
    logger.debug("bify: %d thresholds", len(thresholds))
    valuation = {
        name: frozenset(
            (w, t)
            for t, value in enumerate(row)
            for w, x in enumerate(thresholds)
            if value > x
        )
        for name, row in m.valuation.items()
    }
    return BiModel(len(thresholds), m.flow, valuation)
