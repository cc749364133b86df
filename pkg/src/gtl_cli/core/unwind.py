"""Bounded unwinding of a quasimodel into a finite grid of paths.

The grid starts as the single path ``(start)``. Each step takes the defect at
the head of a first-in-first-out queue, repairs it by extending or inserting
paths, then drops queued entries that stopped being defects and appends the
grid's new defects.

A seriality defect is permanent: every path can always be extended, so
processing one lengthens the grid by a column and leaves it queued. Every
other kind of defect is gone from the grid once it has been processed.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from gtl_cli.core.errors import PreconditionError
from gtl_cli.core.formula import format_formula
from gtl_cli.core.quasimodel import Quasimodel, validate_quasimodel

logger = logging.getLogger("gtl.unwind")

SERIAL = "serial"
DIAMOND = "diamond"
BOX = "box"
IMPLIES = "implies"
COIMPLIES = "coimplies"

DEFECT_KINDS = (SERIAL, DIAMOND, BOX, IMPLIES, COIMPLIES)


@dataclass(frozen=True)
class Defect:
    """A pending repair: ``formula`` is a closure position, ``column`` a path index."""

    kind: str
    path: int
    formula: int = -1
    column: int = -1

    def describe(self, grid: FiniteGrid) -> str:
        """Readable form, e.g. ``implies(path 0, p -> bot, column 0)``."""
        if self.kind == SERIAL:
            return f"serial(path {self.path})"
        text = format_formula(grid.quasimodel.sigma[self.formula])
        if self.kind in (DIAMOND, BOX):
            return f"{self.kind}(path {self.path}, {text})"
        return f"{self.kind}(path {self.path}, {text}, column {self.column})"


@dataclass(frozen=True)
class ProcessedDefect:
    """Log entry for one processing step."""

    step: int
    defect: Defect
    length: int
    inserted: Optional[int] = None


@dataclass
class FiniteGrid:
    """Linearly ordered paths of equal length plus the defect queue."""

    quasimodel: Quasimodel
    paths: dict[int, tuple[int, ...]]
    order: list[int]
    queue: deque[Defect] = field(default_factory=deque)
    processed: list[ProcessedDefect] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.paths[self.order[0]])

    def rows(self) -> list[tuple[int, ...]]:
        """Paths from least to greatest."""
        return [self.paths[pid] for pid in self.order]

    def is_defect(self, defect: Defect) -> bool:
        return defect in _path_defects(self, defect.path)


def _label_has(q: Quasimodel, world: int, pos: int) -> bool:
    return bool(q.label(world) >> pos & 1)


def _path_defects(grid: FiniteGrid, pid: int) -> list[Defect]:
    if pid not in grid.paths:
        return []
    q = grid.quasimodel
    sigma = q.sigma
    path = grid.paths[pid]
    last = path[-1]
    rank = grid.order.index(pid)
    below = [grid.paths[p] for p in grid.order[: rank + 1]]
    above = [grid.paths[p] for p in grid.order[rank:]]

    found = [Defect(SERIAL, pid)]
    for pos, inner, _ in sigma.eventualities:
        if _label_has(q, last, pos) and not _label_has(q, last, inner):
            found.append(Defect(DIAMOND, pid, pos))
    for pos, inner, _ in sigma.henceforths:
        if not _label_has(q, last, pos) and _label_has(q, last, inner):
            found.append(Defect(BOX, pid, pos))
    for j, world in enumerate(path):
        for pos, a, b in sigma.implications:
            if not _label_has(q, world, pos) and not any(
                _label_has(q, v[j], a) and not _label_has(q, v[j], b) for v in below
            ):
                found.append(Defect(IMPLIES, pid, pos, j))
    for j, world in enumerate(path):
        for pos, a, b in sigma.coimplications:
            if _label_has(q, world, pos) and not any(
                _label_has(q, v[j], a) and not _label_has(q, v[j], b) for v in above
            ):
                found.append(Defect(COIMPLIES, pid, pos, j))
    return found


def grid_defects(grid: FiniteGrid) -> list[Defect]:
    """Every defect of the grid, least path first."""
    return [d for pid in grid.order for d in _path_defects(grid, pid)]


def _successors(q: Quasimodel, world: int) -> list[int]:
    return sorted(q.successors(world), key=lambda w: (q.world(w).component, q.world(w).rank))


def _predecessors(q: Quasimodel, world: int) -> list[int]:
    preds = [a for a, b in q.rel if b == world]
    return sorted(preds, key=lambda w: (q.world(w).component, q.world(w).rank))


def _realizing_tail(q: Quasimodel, start: int, inner: int, wanted: bool) -> list[int]:
    """Shortest path of one or more steps to a world deciding ``inner`` as wanted."""
    parent: dict[int, int] = {}
    frontier = deque()
    for w in _successors(q, start):
        if w not in parent:
            parent[w] = -1
            frontier.append(w)
    while frontier:
        w = frontier.popleft()
        if _label_has(q, w, inner) == wanted:
            tail = [w]
            while parent[tail[-1]] != -1:
                tail.append(parent[tail[-1]])
            return tail[::-1]
        for v in _successors(q, w):
            if v not in parent:
                parent[v] = w
                frontier.append(v)
    raise PreconditionError(f"world {start} has no realizing successor path")


def _extend_others(grid: FiniteGrid, anchor: int, k: int, extra: int) -> None:
    """Extend the paths other than ``anchor`` from length ``k`` by ``extra`` columns."""
    q = grid.quasimodel
    position = grid.order.index(anchor)

    for idx in range(position + 1, len(grid.order)):
        below = grid.paths[grid.order[idx - 1]]
        row = list(grid.paths[grid.order[idx]])
        for i in range(k, k + extra):
            options = [y for y in _successors(q, row[-1]) if q.leq(below[i], y)]
            if not options:
                raise PreconditionError("forth-up confluence fails while extending the grid")
            row.append(options[0])
        grid.paths[grid.order[idx]] = tuple(row)

    for idx in range(position - 1, -1, -1):
        above = grid.paths[grid.order[idx + 1]]
        row = list(grid.paths[grid.order[idx]])
        for i in range(k, k + extra):
            options = [y for y in _successors(q, row[-1]) if q.leq(y, above[i])]
            if not options:
                raise PreconditionError("forth-down confluence fails while extending the grid")
            row.append(options[-1])
        grid.paths[grid.order[idx]] = tuple(row)


def _extend_path(grid: FiniteGrid, pid: int, tail: list[int]) -> None:
    k = len(grid.paths[pid])
    grid.paths[pid] = grid.paths[pid] + tuple(tail)
    _extend_others(grid, pid, k, len(tail))


def _between(q: Quasimodel, y: int, low: Optional[int], high: Optional[int]) -> bool:
    return (low is None or q.leq(low, y)) and (high is None or q.leq(y, high))


def _insert_witness(grid: FiniteGrid, defect: Defect) -> int:
    """Insert a path carrying an implication (or coimplication) witness."""
    q = grid.quasimodel
    _, a, b = q.sigma.ops[defect.formula]
    j = defect.column
    w_j = grid.paths[defect.path][j]
    downward = defect.kind == IMPLIES

    candidates = [
        v
        for v in q.ids
        if v != w_j
        and (q.leq(v, w_j) if downward else q.leq(w_j, v))
        and _label_has(q, v, a)
        and not _label_has(q, v, b)
    ]
    if not candidates:
        raise PreconditionError(f"no witness for {defect.kind} defect at world {w_j}")
    candidates.sort(key=lambda v: q.world(v).rank)
    v_j = candidates[-1] if downward else candidates[0]
    rank_j = q.world(v_j).rank

    rows = grid.rows()
    lower_idx = [i for i, r in enumerate(rows) if q.world(r[j]).rank < rank_j]
    upper_idx = [i for i, r in enumerate(rows) if q.world(r[j]).rank > rank_j]
    t = rows[lower_idx[-1]] if lower_idx else None
    u = rows[upper_idx[0]] if upper_idx else None

    k = grid.length
    new: list[Optional[int]] = [None] * k
    new[j] = v_j
    for i in range(j, k - 1):
        options = [
            y
            for y in _successors(q, new[i])  # type: ignore[arg-type]
            if _between(q, y, t[i + 1] if t else None, u[i + 1] if u else None)
        ]
        if not options:
            raise PreconditionError("convexity fails while inserting a witness path")
        new[i + 1] = options[-1]
    for i in range(j - 1, -1, -1):
        options = [
            x
            for x in _predecessors(q, new[i + 1])  # type: ignore[arg-type]
            if _between(q, x, t[i] if t else None, u[i] if u else None)
        ]
        if not options:
            raise PreconditionError("convexity fails while inserting a witness path")
        new[i] = options[-1]

    pid = max(grid.paths) + 1
    grid.paths[pid] = tuple(new)  # type: ignore[arg-type]
    insert_at = upper_idx[0] if upper_idx else len(rows)
    grid.order.insert(insert_at, pid)
    return pid


def _process(grid: FiniteGrid, defect: Defect) -> Optional[int]:
    q = grid.quasimodel
    path = grid.paths[defect.path]
    if defect.kind == SERIAL:
        _extend_path(grid, defect.path, [_successors(q, path[-1])[0]])
    elif defect.kind in (DIAMOND, BOX):
        _, inner, _ = q.sigma.ops[defect.formula]
        tail = _realizing_tail(q, path[-1], inner, defect.kind == DIAMOND)
        _extend_path(grid, defect.path, tail)
    else:
        return _insert_witness(grid, defect)
    return None


def unwind_bounded(q: Quasimodel, start: int, budget: int) -> FiniteGrid:
    """
    Run ``budget`` steps of defect processing from the path ``(start)``.

    Args:
        q: A valid quasimodel
        start: World id the single initial path consists of
        budget: Number of defects to process

    Returns:
        The grid, with the remaining queue and a log of processed defects

    Raises:
        PreconditionError: If ``q`` is not a quasimodel, ``start`` is not one
            of its worlds or ``budget`` is negative
    """
    report = validate_quasimodel(q)
    if not report.ok:
        raise PreconditionError(f"not a quasimodel: fails {', '.join(report.failures())}")
    if start not in q.ids:
        raise PreconditionError(f"unknown start world {start}")
    if budget < 0:
        raise PreconditionError("budget must be non-negative")

    grid = FiniteGrid(q, {0: (start,)}, [0])
    grid.queue.extend(grid_defects(grid))

    for step in range(1, budget + 1):
        head = grid.queue.popleft()
        inserted = _process(grid, head)
        grid.processed.append(ProcessedDefect(step, head, grid.length, inserted))

        current = grid_defects(grid)
        still = set(current)
        kept = deque(d for d in grid.queue if d in still)
        queued = set(kept)
        kept.extend(d for d in current if d not in queued)
        grid.queue = kept
        logger.debug(
            "step %d: %s, %d paths of length %d, %d queued",
            step, head.describe(grid), len(grid.order), grid.length, len(grid.queue),
        )
    return grid


def grid_problems(grid: FiniteGrid) -> list[str]:
    """Violations of the grid invariants (empty when the grid is sound)."""
    q = grid.quasimodel
    problems: list[str] = []
    lengths = {len(p) for p in grid.paths.values()}
    if len(lengths) != 1:
        problems.append("paths have different lengths")
        return problems
    for pid in grid.order:
        path = grid.paths[pid]
        for i in range(len(path) - 1):
            if (path[i], path[i + 1]) not in q.rel:
                problems.append(f"path {pid}: columns {i} and {i + 1} are not related")
    rows = grid.rows()
    for i in range(len(rows) - 1):
        if not all(q.leq(x, y) for x, y in zip(rows[i], rows[i + 1])):
            problems.append(f"paths {grid.order[i]} and {grid.order[i + 1]} are not ordered")
    return problems
