"""Sigma-types, sensible pairs and Sigma-moments.

Types are bit sets over a :class:`Closure`. A moment is a strictly
decreasing chain of types; index 0 is the least world and carries the
largest type.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from gtl_cli.core.errors import ClosureLimitError, MomentLimitError
from gtl_cli.core.formula import (
    FREE_OPS,
    OP_AND,
    OP_BOTTOM,
    OP_COIMPLIES,
    OP_IMPLIES,
    OP_OR,
    Closure,
    Formula,
    format_formula,
)

logger = logging.getLogger("gtl.moments")


def _bit(mask: int, pos: int) -> int:
    return mask >> pos & 1


@dataclass(frozen=True)
class SigmaType:
    """A set of closure formulas, stored as a bit set."""

    sigma: Closure
    members: int

    def __contains__(self, f: object) -> bool:
        return f in self.sigma.index and bool(_bit(self.members, self.sigma.index[f]))  # type: ignore[index]

    def formulas(self) -> list[Formula]:
        return self.sigma.members(self.members)

    def __str__(self) -> str:
        return self.sigma.format_mask(self.members)


def is_type(sigma: Closure, members: int) -> bool:
    """Check the local closure laws of a Sigma-type."""
    for pos, (op, a, b) in enumerate(sigma.ops):
        here = _bit(members, pos)
        if op == OP_BOTTOM:
            if here:
                return False
        elif op == OP_AND:
            if here != (_bit(members, a) & _bit(members, b)):
                return False
        elif op == OP_OR:
            if here != (_bit(members, a) | _bit(members, b)):
                return False
        elif op == OP_IMPLIES:
            if here and _bit(members, a) and not _bit(members, b):
                return False
            if _bit(members, b) and not here:
                return False
        elif op == OP_COIMPLIES:
            if here and not _bit(members, a):
                return False
            if _bit(members, a) and not _bit(members, b) and not here:
                return False
    return True


def _check_sigma(sigma: Closure, max_sigma: Optional[int]) -> None:
    if max_sigma is not None and len(sigma) > max_sigma:
        raise ClosureLimitError(len(sigma), max_sigma)


def enumerate_types(sigma: Closure, max_sigma: Optional[int] = None) -> list[SigmaType]:
    """
    List every Sigma-type in increasing bit-set order.

    Args:
        sigma: Closure the types range over
        max_sigma: Refuse closures larger than this

    Raises:
        ClosureLimitError: If the closure is too large
    """
    _check_sigma(sigma, max_sigma)
    found: list[int] = []

    def extend(pos: int, members: int) -> None:
        if pos == len(sigma):
            found.append(members)
            return
        op, a, b = sigma.ops[pos]
        if op == OP_BOTTOM:
            choices: tuple[int, ...] = (0,)
        elif op in FREE_OPS:
            choices = (0, 1)
        elif op == OP_AND:
            choices = (_bit(members, a) & _bit(members, b),)
        elif op == OP_OR:
            choices = (_bit(members, a) | _bit(members, b),)
        elif op == OP_IMPLIES:
            if _bit(members, b):
                choices = (1,)
            elif _bit(members, a):
                choices = (0,)
            else:
                choices = (0, 1)
        else:  # coimplication
            if not _bit(members, a):
                choices = (0,)
            elif not _bit(members, b):
                choices = (1,)
            else:
                choices = (0, 1)
        for c in choices:
            extend(pos + 1, members | (c << pos))

    extend(0, 0)
    return [SigmaType(sigma, m) for m in sorted(found)]


@lru_cache(maxsize=1 << 16)
def _sensible_projected(sigma: Closure, source: int, target: int) -> bool:
    for pos, inner, _ in sigma.nexts:
        if _bit(source, pos) != _bit(target, inner):
            return False
    for pos, inner, _ in sigma.eventualities:
        if _bit(source, pos) != (_bit(source, inner) | _bit(target, pos)):
            return False
    for pos, inner, _ in sigma.henceforths:
        if _bit(source, pos) != (_bit(source, inner) & _bit(target, pos)):
            return False
    return True


def sensible_masks(sigma: Closure, source: int, target: int) -> bool:
    """Whether (source, target) bit sets form a sensible pair."""
    return _sensible_projected(sigma, source & sigma.source_mask, target & sigma.target_mask)


def is_sensible_pair(a: SigmaType, b: SigmaType) -> bool:
    """
    Whether ``b`` can follow ``a`` one step later.

    Raises:
        ValueError: If the two types range over different closures
    """
    if a.sigma != b.sigma:
        raise ValueError("Types range over different closures")
    return sensible_masks(a.sigma, a.members, b.members)


@dataclass(frozen=True)
class Moment:
    """A strictly decreasing chain of types, bottom world first."""

    sigma: Closure
    chain: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.chain)

    @property
    def types(self) -> tuple[SigmaType, ...]:
        return tuple(SigmaType(self.sigma, m) for m in self.chain)

    @property
    def first(self) -> int:
        return self.chain[0]

    @property
    def last(self) -> int:
        return self.chain[-1]

    def falsifies(self, f: Formula) -> bool:
        """A moment falsifies ``f`` iff its smallest type omits it."""
        return not _bit(self.last, self.sigma.position(f))

    def to_lists(self) -> list[list[str]]:
        return [[format_formula(f) for f in self.sigma.members(m)] for m in self.chain]

    def __str__(self) -> str:
        return "(" + ", ".join(self.sigma.format_mask(m) for m in self.chain) + ")"


def moment_problems(sigma: Closure, chain: Sequence[int]) -> list[str]:
    """List every way a chain of bit sets fails to be a moment."""
    problems: list[str] = []
    if not chain:
        return ["empty chain"]
    for i, members in enumerate(chain):
        if members & ~sigma.full_mask:
            problems.append(f"type {i} has members outside the closure")
        elif not is_type(sigma, members):
            problems.append(f"type {i} is not a Sigma-type")
    for i in range(len(chain) - 1):
        upper, lower = chain[i], chain[i + 1]
        if lower & ~upper or lower == upper:
            problems.append(f"type {i + 1} is not a proper subset of type {i}")
    for i, members in enumerate(chain):
        for pos, a, b in sigma.implications:
            if _bit(members, pos):
                continue
            if not any(_bit(chain[j], a) and not _bit(chain[j], b) for j in range(i + 1)):
                problems.append(f"no witness below type {i} for {format_formula(sigma[pos])}")
        for pos, a, b in sigma.coimplications:
            if not _bit(members, pos):
                continue
            if not any(_bit(chain[j], a) and not _bit(chain[j], b) for j in range(i, len(chain))):
                problems.append(f"no witness above type {i} for {format_formula(sigma[pos])}")
    return problems


def is_moment(types: Sequence[SigmaType]) -> bool:
    """Whether a chain of types is a Sigma-moment."""
    if not types:
        return False
    sigma = types[0].sigma
    if any(t.sigma != sigma for t in types):
        raise ValueError("Types range over different closures")
    return not moment_problems(sigma, [t.members for t in types])


def _chain_from_values(sigma: Closure, free_values: dict[int, int], height: int) -> tuple[int, ...]:
    """Derive the chain of a Goedel valuation with top value ``height``."""
    values: list[int] = []
    for pos, (op, a, b) in enumerate(sigma.ops):
        if op in FREE_OPS:
            v = free_values[pos]
        elif op == OP_BOTTOM:
            v = 0
        elif op == OP_AND:
            v = min(values[a], values[b])
        elif op == OP_OR:
            v = max(values[a], values[b])
        elif op == OP_IMPLIES:
            v = height if values[a] <= values[b] else values[b]
        else:
            v = values[a] if values[a] > values[b] else 0
        values.append(v)
    return tuple(
        sum(1 << pos for pos, v in enumerate(values) if v > level) for level in range(height)
    )


def iter_moments(
    sigma: Closure,
    max_sigma: Optional[int] = None,
    max_moments: Optional[int] = None,
) -> Iterator[Moment]:
    """
    Stream every Sigma-moment, shortest first, then by chain bit sets.

    A moment of length ``m + 1`` is the chain ``{f : v(f) > i}`` of a
    valuation ``v`` into ``0..m+1`` that is Goedel on connectives and uses
    every value ``1..m``; only variables and temporal formulas are chosen
    freely.

    Raises:
        ClosureLimitError: If the closure exceeds ``max_sigma``
        MomentLimitError: If more than ``max_moments`` moments exist
    """
    _check_sigma(sigma, max_sigma)
    free = sigma.free
    produced = 0

    for m in range(len(free) + 1):
        height = m + 1
        batch: list[tuple[int, ...]] = []
        assignment: dict[int, int] = {}

        def assign(idx: int, used: frozenset[int]) -> None:
            if m - len(used) > len(free) - idx:
                return
            if idx == len(free):
                batch.append(_chain_from_values(sigma, assignment, height))
                return
            for v in range(height + 1):
                assignment[free[idx]] = v
                assign(idx + 1, used | {v} if 1 <= v <= m else used)

        assign(0, frozenset())
        batch.sort()
        for chain in batch:
            produced += 1
            if max_moments is not None and produced > max_moments:
                raise MomentLimitError(max_moments)
            yield Moment(sigma, chain)
        logger.debug("moments of length %d: %d", height, len(batch))


def enumerate_moments(
    sigma: Closure,
    max_sigma: Optional[int] = None,
    max_moments: Optional[int] = None,
) -> list[Moment]:
    """All Sigma-moments in canonical order."""
    return list(iter_moments(sigma, max_sigma=max_sigma, max_moments=max_moments))
