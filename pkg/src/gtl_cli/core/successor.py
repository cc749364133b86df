"""Temporal successor relations between moments."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from gtl_cli.core.errors import RelationShapeError
from gtl_cli.core.formula import Closure
from gtl_cli.core.moments import Moment, sensible_masks
from gtl_cli.core.relations import STRUCTURAL_CHECKS, index_order, structural_checks

Interval = tuple[int, int]


@dataclass(frozen=True)
class ConvexRelation:
    """A relation between the positions of two chains."""

    source_len: int
    target_len: int
    pairs: frozenset[tuple[int, int]]

    @classmethod
    def from_pairs(
        cls, source_len: int, target_len: int, pairs: Iterable[tuple[int, int]]
    ) -> ConvexRelation:
        return cls(source_len, target_len, frozenset((int(x), int(y)) for x, y in pairs))

    @classmethod
    def from_intervals(cls, target_len: int, intervals: Iterable[Interval]) -> ConvexRelation:
        intervals = tuple(intervals)
        pairs = frozenset(
            (x, y) for x, (a, b) in enumerate(intervals) for y in range(a, b + 1)
        )
        return cls(len(intervals), target_len, pairs)

    @classmethod
    def identity(cls, length: int) -> ConvexRelation:
        return cls(length, length, frozenset((i, i) for i in range(length)))

    def image(self, x: int) -> list[int]:
        return sorted(y for (s, y) in self.pairs if s == x)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def intervals(self) -> Optional[tuple[Interval, ...]]:
        """Image intervals per source, or None if some image is empty or has a gap."""
        result = []
        for x in range(self.source_len):
            image = self.image(x)
            if not image or image[-1] - image[0] + 1 != len(image):
                return None
            result.append((image[0], image[-1]))
        return tuple(result)


@dataclass(frozen=True)
class RelationVerdict:
    """Outcome of every check on a relation between two moments."""

    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]


def check_chains(
    sigma: Closure, source: tuple[int, ...], target: tuple[int, ...], relation: ConvexRelation
) -> RelationVerdict:
    """Check a relation between two chains of type bit sets."""
    if relation.source_len != len(source) or relation.target_len != len(target):
        raise RelationShapeError(
            f"Relation is {relation.source_len}x{relation.target_len}, "
            f"chains are {len(source)}x{len(target)}"
        )
    for x, y in relation.pairs:
        if not (0 <= x < len(source) and 0 <= y < len(target)):
            raise RelationShapeError(f"Pair ({x}, {y}) outside the chains")

    checks = {
        "sensible": all(sensible_masks(sigma, source[x], target[y]) for x, y in relation.pairs)
    }
    checks.update(
        structural_checks(
            range(len(source)), range(len(target)), relation.pairs, index_order, index_order
        )
    )
    return RelationVerdict(checks)


def check_relation(m: Moment, n: Moment, relation: ConvexRelation) -> RelationVerdict:
    """
    Check that a relation witnesses ``n`` as a temporal successor of ``m``.

    Chain index order is world order, so index 0 is the least world on both
    sides.

    Raises:
        RelationShapeError: If the relation does not fit the two chains
    """
    if m.sigma != n.sigma:
        raise ValueError("Moments range over different closures")
    return check_chains(m.sigma, m.chain, n.chain, relation)


def _interval_candidates(sensible: list[list[bool]], target_len: int) -> list[tuple[Interval, ...]]:
    """
    Serial interval assignments with nondecreasing endpoints and no gaps.

    Every relation passing the confluence checks has this shape, so the
    candidates are a superset of the answer.
    """
    source_len = len(sensible)
    found: list[tuple[Interval, ...]] = []
    chosen: list[Interval] = []

    def extend(x: int, prev_a: int, prev_b: int) -> None:
        if x == source_len:
            if prev_b == target_len - 1:
                found.append(tuple(chosen))
            return
        row = sensible[x]
        a_max = 0 if x == 0 else min(prev_b + 1, target_len - 1)
        for a in range(prev_a, a_max + 1):
            b_min = max(a, prev_b)
            if not all(row[y] for y in range(a, b_min + 1)):
                continue
            for b in range(b_min, target_len):
                if not row[b]:
                    break
                chosen.append((a, b))
                extend(x + 1, a, b)
                chosen.pop()

    extend(0, 0, 0)
    return found


@lru_cache(maxsize=1 << 15)
def _projected_relations(
    sigma: Closure, source: tuple[int, ...], target: tuple[int, ...]
) -> tuple[tuple[Interval, ...], ...]:
    sensible = [[sensible_masks(sigma, a, b) for b in target] for a in source]
    result = []
    for intervals in _interval_candidates(sensible, len(target)):
        relation = ConvexRelation.from_intervals(len(target), intervals)
        if check_chains(sigma, source, target, relation).ok:
            result.append(intervals)
    return tuple(result)


def successor_intervals(
    sigma: Closure, source: tuple[int, ...], target: tuple[int, ...]
) -> tuple[tuple[Interval, ...], ...]:
    """
    Witnessing relations between two chains, as image intervals per source.

    Only the temporally relevant bits of each type matter, so results are
    cached on the projected chains.
    """
    return _projected_relations(
        sigma,
        tuple(t & sigma.source_mask for t in source),
        tuple(t & sigma.target_mask for t in target),
    )


def temporal_successors(m: Moment, n: Moment) -> list[ConvexRelation]:
    """
    All sensible, convex, fully confluent, serial relations from ``m`` to ``n``.

    Returned in lexicographic order of image endpoints; an empty list means
    ``n`` is not a temporal successor of ``m``.
    """
    if m.sigma != n.sigma:
        raise ValueError("Moments range over different closures")
    return [
        ConvexRelation.from_intervals(len(n), intervals)
        for intervals in successor_intervals(m.sigma, m.chain, n.chain)
    ]
