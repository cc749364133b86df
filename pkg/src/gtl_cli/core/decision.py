"""Falsifiability decision procedure with checkable witnesses.

The search is a deterministic rendering of the guess-a-moment algorithm:

1. Breadth-first reachability over moments, starting from every moment
   whose smallest type omits the input formula.
2. For each reachable moment lying on a cycle, in canonical order, a
   breadth-first search over loop states (moment, star relation, pending
   eventualities, pending henceforths) that returns to the moment with
   nothing pending.

Whether one moment follows another, and which relations witness it, only
depends on the bits of each type that temporal formulas look at. Moments
agreeing on those bits (as source and as target) form a class, and both
phases run over classes.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import networkx as nx

from gtl_cli.core.errors import ClosureLimitError, InvalidWitnessError
from gtl_cli.core.formula import Closure, Formula, closure, format_formula, neg, parse
from gtl_cli.core.moments import Moment, enumerate_moments, moment_problems
from gtl_cli.core.quasimodel import Quasimodel, World
from gtl_cli.core.successor import ConvexRelation, Interval, check_relation, successor_intervals

logger = logging.getLogger("gtl.decision")

Intervals = tuple[Interval, ...]


@dataclass
class DecisionConfig:
    """Limits and parallelism for the decision procedure."""

    max_sigma: int = 12
    max_moments: int = 250_000
    n_workers: int = 1
    quiet: bool = True

    def __post_init__(self):
        if self.max_sigma < 1:
            raise ValueError("max_sigma must be positive")
        if self.max_moments < 1:
            raise ValueError("max_moments must be positive")


class Status(Enum):
    """Verdict of the decision procedure."""

    VALID = "valid"
    FALSIFIABLE = "falsifiable"


@dataclass(frozen=True)
class Witness:
    """
    A lasso of moments certifying falsifiability.

    ``moments[pivot] == moments[-1]`` and ``relations[j]`` relates
    ``moments[j]`` to ``moments[j + 1]``.
    """

    formula: Formula
    moments: tuple[Moment, ...]
    pivot: int
    relations: tuple[ConvexRelation, ...]

    @property
    def sigma(self) -> Closure:
        return self.moments[0].sigma

    @property
    def loop_length(self) -> int:
        return len(self.moments) - 1 - self.pivot


@dataclass
class SearchStats:
    """Counters reported by :func:`decide`."""

    sigma: int = 0
    moments: int = 0
    classes: int = 0
    initial: int = 0
    reachable: int = 0
    candidates: int = 0
    tried: int = 0
    loop_states: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


@dataclass(frozen=True)
class DecisionResult:
    status: Status
    witness: Optional[Witness] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def valid(self) -> bool:
        return self.status is Status.VALID


@dataclass(frozen=True)
class LoopState:
    """
    Search node of the loop phase.

    ``moment`` is a class id; ``star`` pairs a position of the loop moment
    with a reachable position of the current one; pending entries pair a
    loop-moment position with a closure position.
    """

    moment: int
    star: frozenset[tuple[int, int]]
    pending_diamond: frozenset[tuple[int, int]]
    pending_box: frozenset[tuple[int, int]]


Step = tuple[int, Intervals]


class MomentGraph:
    """Moments of a closure grouped into classes, with lazily computed successors."""

    def __init__(self, formula: Formula, config: DecisionConfig):
        self.formula = formula
        self.sigma = closure(formula)
        if len(self.sigma) > config.max_sigma:
            raise ClosureLimitError(len(self.sigma), config.max_sigma)
        self.moments = enumerate_moments(self.sigma, max_moments=config.max_moments)
        self.root = self.sigma.position(formula)

        src, tgt = self.sigma.source_mask, self.sigma.target_mask
        self.class_of: list[int] = []
        self.keys: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        self.members: list[list[int]] = []
        index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        for mid, m in enumerate(self.moments):
            key = (tuple(t & src for t in m.chain), tuple(t & tgt for t in m.chain))
            cid = index.setdefault(key, len(self.keys))
            if cid == len(self.keys):
                self.keys.append(key)
                self.members.append([])
            self.members[cid].append(mid)
            self.class_of.append(cid)

        # Representative moment of each class; initial classes use an initial member
        self.initial_rep: dict[int, int] = {}
        for mid, m in enumerate(self.moments):
            if not m.last >> self.root & 1:
                self.initial_rep.setdefault(self.class_of[mid], mid)
        self.classes_by_target: dict[tuple[int, ...], list[int]] = {}
        for cid, (_, target) in enumerate(self.keys):
            self.classes_by_target.setdefault(target, []).append(cid)

        self._by_source: dict[tuple[int, ...], list[Step]] = {}
        self.parent: dict[int, Optional[Step]] = {}
        self.scc_of: dict[int, int] = {}
        self.cyclic: list[int] = []
        self._explore()

    def chain(self, cid: int) -> tuple[int, ...]:
        return self.moments[self.members[cid][0]].chain

    def successors(self, cid: int) -> list[Step]:
        """Successor classes with their witnessing relations, in class order."""
        source = self.keys[cid][0]
        if source not in self._by_source:
            steps: list[Step] = []
            for target, cids in self.classes_by_target.items():
                rels = successor_intervals(self.sigma, source, target)
                if rels:
                    steps.extend((d, rels) for d in cids)
            steps.sort(key=lambda s: s[0])
            self._by_source[source] = steps
        return [(d, rels) for d, rels in self._by_source[source]]

    def _explore(self) -> None:
        """Reachability from the initial classes, then cycle detection."""
        roots = sorted(self.initial_rep, key=lambda c: self.initial_rep[c])
        frontier = deque(roots)
        for c in roots:
            self.parent[c] = None
        g = nx.DiGraph()
        g.add_nodes_from(roots)
        while frontier:
            c = frontier.popleft()
            for d, rels in self.successors(c):
                g.add_edge(c, d)
                if d not in self.parent:
                    self.parent[d] = (c, rels[0])
                    frontier.append(d)

        for i, component in enumerate(nx.strongly_connected_components(g)):
            for c in component:
                self.scc_of[c] = i
        sizes: dict[int, int] = {}
        for i in self.scc_of.values():
            sizes[i] = sizes.get(i, 0) + 1
        self.cyclic = sorted(
            c for c in self.parent if sizes[self.scc_of[c]] > 1 or g.has_edge(c, c)
        )
        logger.debug(
            "%d moments, %d classes, %d reachable, %d on cycles",
            len(self.moments), len(self.keys), len(self.parent), len(self.cyclic),
        )

    def prefix(self, cid: int) -> list[Step]:
        """Path of (class, relation into it) from an initial class to ``cid``."""
        steps: list[Step] = []
        current = cid
        while True:
            link = self.parent[current]
            if link is None:
                steps.append((current, ()))
                break
            prev, rels = link
            steps.append((current, rels))
            current = prev
        return steps[::-1]

    def find_loop(self, cid: int) -> tuple[Optional[list[Step]], int]:
        """
        Search for a loop from class ``cid`` back to itself discharging every
        pending eventuality and henceforth.

        Returns:
            The loop steps (or None) and the number of loop states visited
        """
        sigma = self.sigma
        scc = self.scc_of[cid]
        allowed = {c for c, i in self.scc_of.items() if i == scc}
        start_chain = self.chain(cid)

        diamonds = frozenset(
            (k, pos)
            for k, t in enumerate(start_chain)
            for pos, inner, _ in sigma.eventualities
            if t >> pos & 1 and not t >> inner & 1
        )
        boxes = frozenset(
            (k, pos)
            for k, t in enumerate(start_chain)
            for pos, inner, _ in sigma.henceforths
            if not t >> pos & 1 and t >> inner & 1
        )

        # Cheap refutation: something in the cycle must settle every pending entry
        for _, pos in diamonds:
            inner = sigma.ops[pos][1]
            if not any(t >> inner & 1 for c in allowed for t in self.chain(c)):
                return None, 0
        for _, pos in boxes:
            inner = sigma.ops[pos][1]
            if not any(not t >> inner & 1 for c in allowed for t in self.chain(c)):
                return None, 0

        start = LoopState(cid, frozenset((k, k) for k in range(len(start_chain))), diamonds, boxes)
        parent: dict[LoopState, tuple[LoopState, Step]] = {}
        seen = {start}
        frontier = deque([start])
        while frontier:
            state = frontier.popleft()
            for d, rels in self.successors(state.moment):
                if d not in allowed:
                    continue
                chain = self.chain(d)
                for intervals in rels:
                    star = frozenset(
                        (k, y)
                        for k, x in state.star
                        for y in range(intervals[x][0], intervals[x][1] + 1)
                    )
                    diamond = frozenset(
                        (k, pos)
                        for k, pos in state.pending_diamond
                        if not any(
                            k2 == k and chain[y] >> sigma.ops[pos][1] & 1 for k2, y in star
                        )
                    )
                    box = frozenset(
                        (k, pos)
                        for k, pos in state.pending_box
                        if not any(
                            k2 == k and not chain[y] >> sigma.ops[pos][1] & 1 for k2, y in star
                        )
                    )
                    nxt = LoopState(d, star, diamond, box)
                    if d == cid and not diamond and not box:
                        steps = [(d, intervals)]
                        current = state
                        while current != start:
                            current, step = parent[current]
                            steps.append(step)
                        return steps[::-1], len(seen)
                    if nxt not in seen:
                        seen.add(nxt)
                        parent[nxt] = (state, (d, intervals))
                        frontier.append(nxt)
        return None, len(seen)

    def build_witness(self, cid: int, loop: list[Step]) -> Witness:
        prefix = self.prefix(cid)
        ids: list[int] = []
        relations: list[ConvexRelation] = []
        for position, (c, rels) in enumerate(prefix):
            ids.append(self.initial_rep[c] if position == 0 else self.members[c][0])
            if position:
                relations.append(
                    ConvexRelation.from_intervals(len(self.moments[ids[-1]]), rels)
                )
        pivot_moment = ids[-1]
        for position, (c, intervals) in enumerate(loop):
            last = position == len(loop) - 1
            ids.append(pivot_moment if last else self.members[c][0])
            relations.append(ConvexRelation.from_intervals(len(self.moments[ids[-1]]), intervals))
        return Witness(
            formula=self.formula,
            moments=tuple(self.moments[i] for i in ids),
            pivot=len(prefix) - 1,
            relations=tuple(relations),
        )


# Per-process cache so worker processes build each graph once
_GRAPH_CACHE: dict[tuple[str, int, int], MomentGraph] = {}


def _graph_for(text: str, max_sigma: int, max_moments: int) -> MomentGraph:
    key = (text, max_sigma, max_moments)
    if key not in _GRAPH_CACHE:
        _GRAPH_CACHE.clear()
        config = DecisionConfig(max_sigma=max_sigma, max_moments=max_moments)
        _GRAPH_CACHE[key] = MomentGraph(parse(text), config)
    return _GRAPH_CACHE[key]


def _loop_task(task: tuple[str, int, int, list[int]]) -> list[tuple[int, Optional[list[Step]], int]]:
    """Worker: run the loop search for a batch of candidate classes."""
    text, max_sigma, max_moments, candidates = task
    graph = _graph_for(text, max_sigma, max_moments)
    results = []
    for cid in candidates:
        loop, states = graph.find_loop(cid)
        results.append((cid, loop, states))
        if loop is not None:
            break
    return results


def decide(f: Formula, config: Optional[DecisionConfig] = None) -> DecisionResult:
    """
    Decide whether a formula is valid.

    Args:
        f: Formula to decide
        config: Limits and worker count

    Returns:
        VALID, or FALSIFIABLE with a witness; identical input gives an
        identical witness whatever the worker count

    Raises:
        ClosureLimitError: If the closure exceeds ``config.max_sigma``
        MomentLimitError: If the moments exceed ``config.max_moments``
    """
    from gtl_cli.parallel.executor import ParallelExecutor
    from gtl_cli.progress.ninja import NinjaProgress

    config = config or DecisionConfig()
    graph = MomentGraph(f, config)
    stats = SearchStats(
        sigma=len(graph.sigma),
        moments=len(graph.moments),
        classes=len(graph.keys),
        initial=len(graph.initial_rep),
        reachable=len(graph.parent),
        candidates=len(graph.cyclic),
    )

    found: Optional[tuple[int, list[Step]]] = None
    progress = NinjaProgress(
        total=len(graph.cyclic), label="loop search", unit="classes", quiet=config.quiet
    )
    progress.start()
    executor = ParallelExecutor(_loop_task, n_workers=config.n_workers)
    if executor.n_workers > 1 and len(graph.cyclic) > 1:
        text = format_formula(f)
        _GRAPH_CACHE[(text, config.max_sigma, config.max_moments)] = graph
        size = max(1, len(graph.cyclic) // (executor.n_workers * 4))
        batches = [graph.cyclic[i:i + size] for i in range(0, len(graph.cyclic), size)]
        tasks = [(text, config.max_sigma, config.max_moments, batch) for batch in batches]
        for batch_result in executor.map_ordered(tasks):
            for cid, loop, states in batch_result:
                stats.tried += 1
                stats.loop_states += states
                progress.update(1)
                if loop is not None and found is None:
                    found = (cid, loop)
                    progress.note("witness found")
            if found is not None:
                break
    else:
        for cid in graph.cyclic:
            loop, states = graph.find_loop(cid)
            stats.tried += 1
            stats.loop_states += states
            progress.update(1)
            if loop is not None:
                found = (cid, loop)
                progress.note("witness found")
                break
    progress.finish()

    if found is None:
        logger.info("valid: %s", format_formula(f))
        return DecisionResult(Status.VALID, None, stats)
    witness = graph.build_witness(*found)
    logger.info(
        "falsifiable: %s (prefix %d, loop %d)",
        format_formula(f), witness.pivot, witness.loop_length,
    )
    return DecisionResult(Status.FALSIFIABLE, witness, stats)


@dataclass(frozen=True)
class SatisfiabilityResult:
    """``formula`` takes a non-zero value somewhere iff its negation is falsifiable."""

    satisfiable: bool
    decision: DecisionResult


def decide_satisfiable(f: Formula, config: Optional[DecisionConfig] = None) -> SatisfiabilityResult:
    """Decide whether ``f`` takes a non-zero value in some model."""
    result = decide(neg(f), config)
    return SatisfiabilityResult(result.status is Status.FALSIFIABLE, result)


@dataclass(frozen=True)
class WitnessReport:
    """Verification outcome; ``condition`` names the first failing condition."""

    ok: bool
    condition: Optional[str] = None
    diagnostics: list[str] = field(default_factory=list)


def _fail(condition: str, message: str) -> WitnessReport:
    return WitnessReport(False, condition, [message])


def _realized_from(w: Witness, j: int, inner: int, wanted: bool) -> bool:
    """Whether some relation path from loop position ``j`` reaches a type deciding ``inner``."""
    current = {j}
    for offset in range(w.loop_length + 1):
        moment = w.moments[w.pivot + offset]
        if any(bool(moment.chain[y] >> inner & 1) == wanted for y in current):
            return True
        if offset == w.loop_length:
            break
        relation = w.relations[w.pivot + offset]
        current = {y for x, y in relation.pairs if x in current}
    return False


def verify_witness(f: Formula, w: Witness) -> WitnessReport:
    """
    Check a falsifiability witness against a formula.

    Conditions, in order: ``shape`` (lengths, pivot, closure), ``moments``,
    ``A'`` (the first moment falsifies ``f`` and the lasso closes), ``B``
    (every relation is sensible, convex, fully confluent and serial), ``C``
    (pivot eventualities realized) and ``D`` (pivot henceforths refuted).
    """
    sigma = closure(f)
    if not w.moments:
        return _fail("shape", "witness has no moments")
    if any(m.sigma != sigma for m in w.moments):
        return _fail("shape", f"moments are not over the closure of {format_formula(f)}")
    if len(w.relations) != len(w.moments) - 1:
        return _fail("shape", f"{len(w.moments)} moments need {len(w.moments) - 1} relations")
    if not 0 <= w.pivot < len(w.moments) - 1:
        return _fail("shape", f"pivot {w.pivot} leaves no loop")

    for j, m in enumerate(w.moments):
        problems = moment_problems(sigma, m.chain)
        if problems:
            return _fail("moments", f"moment {j}: {problems[0]}")

    if not w.moments[0].falsifies(f):
        return _fail("A'", "the smallest type of the first moment contains the formula")
    if w.moments[w.pivot] != w.moments[-1]:
        return _fail("A'", f"moment {len(w.moments) - 1} differs from pivot moment {w.pivot}")

    for j, relation in enumerate(w.relations):
        try:
            verdict = check_relation(w.moments[j], w.moments[j + 1], relation)
        except ValueError as e:
            return _fail("B", f"relation {j}: {e}")
        if not verdict.ok:
            return _fail("B", f"relation {j} fails {', '.join(verdict.failures())}")

    pivot = w.moments[w.pivot]
    for j, t in enumerate(pivot.chain):
        for pos, inner, _ in sigma.eventualities:
            if t >> pos & 1 and not _realized_from(w, j, inner, True):
                return _fail("C", f"{format_formula(sigma[pos])} at pivot position {j} is never realized")
    for j, t in enumerate(pivot.chain):
        for pos, inner, _ in sigma.henceforths:
            if not t >> pos & 1 and not _realized_from(w, j, inner, False):
                return _fail("D", f"{format_formula(sigma[pos])} at pivot position {j} is never refuted")
    return WitnessReport(True)


def witness_to_quasimodel(w: Witness) -> Quasimodel:
    """
    Unfold a witness into a quasimodel falsifying its formula.

    Worlds are (column, rank) for columns before the lasso's end; the last
    relation feeds back into the pivot column.

    Raises:
        InvalidWitnessError: If the witness does not verify
    """
    report = verify_witness(w.formula, w)
    if not report.ok:
        raise InvalidWitnessError(
            f"witness fails condition {report.condition}: {'; '.join(report.diagnostics)}"
        )

    columns = len(w.moments) - 1
    offsets: list[int] = []
    worlds: list[World] = []
    for k in range(columns):
        offsets.append(len(worlds))
        for s, label in enumerate(w.moments[k].chain):
            worlds.append(World(len(worlds), k, s, label))

    rel = set()
    for k, relation in enumerate(w.relations):
        target = k + 1 if k + 1 < columns else w.pivot
        for x, y in relation.pairs:
            rel.add((offsets[k] + x, offsets[target] + y))
    return Quasimodel(w.sigma, tuple(worlds), frozenset(rel))
