"""Quasimodels: validation, quotients of bi-relational models, convex closure."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import networkx as nx

from gtl_cli.core.formula import Closure, Formula, format_formula
from gtl_cli.core.moments import is_type, sensible_masks
from gtl_cli.core.relations import structural_checks
from gtl_cli.core.semantics import BiModel, bi_heights

logger = logging.getLogger("gtl.quasimodel")


@dataclass(frozen=True)
class World:
    """A world of a quasimodel: a position ``rank`` in chain ``component``."""

    id: int
    component: int
    rank: int
    label: int


@dataclass(frozen=True)
class Quasimodel:
    """
    A labelled, locally linear poset with a successor relation.

    Worlds of one component form a chain ordered by rank; worlds of
    different components are incomparable.
    """

    sigma: Closure
    worlds: tuple[World, ...]
    rel: frozenset[tuple[int, int]]
    _by_id: dict[int, World] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        by_id = {w.id: w for w in self.worlds}
        if len(by_id) != len(self.worlds):
            raise ValueError("Duplicate world ids")
        for a, b in self.rel:
            if a not in by_id or b not in by_id:
                raise ValueError(f"Relation pair ({a}, {b}) mentions an unknown world")
        object.__setattr__(self, "_by_id", by_id)

    def world(self, wid: int) -> World:
        return self._by_id[wid]

    @property
    def ids(self) -> list[int]:
        return [w.id for w in self.worlds]

    def leq(self, a: int, b: int) -> bool:
        wa, wb = self._by_id[a], self._by_id[b]
        return wa.component == wb.component and wa.rank <= wb.rank

    def label(self, wid: int) -> int:
        return self._by_id[wid].label

    def components(self) -> dict[int, list[int]]:
        """World ids of each component, least first."""
        result: dict[int, list[int]] = {}
        for w in sorted(self.worlds, key=lambda w: (w.component, w.rank)):
            result.setdefault(w.component, []).append(w.id)
        return result

    @property
    def height(self) -> int:
        """Length of the longest chain."""
        return max((len(ids) for ids in self.components().values()), default=0)

    def successors(self, wid: int) -> list[int]:
        return sorted(b for a, b in self.rel if a == wid)

    def graph(self) -> nx.DiGraph:
        """The successor relation as a directed graph on world ids."""
        g = nx.DiGraph()
        g.add_nodes_from(self.ids)
        g.add_edges_from(self.rel)
        return g

    def falsifies(self, f: Formula) -> bool:
        """Whether some label omits ``f``."""
        pos = self.sigma.position(f)
        return any(not w.label >> pos & 1 for w in self.worlds)


@dataclass(frozen=True)
class QuasimodelReport:
    """Outcome of every quasimodel condition, with failure details."""

    checks: dict[str, bool]
    problems: list[str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]


def _realized(q: Quasimodel, g: nx.DiGraph, wid: int, inner: int, wanted: bool) -> bool:
    for v in nx.descendants(g, wid) | {wid}:
        if bool(q.label(v) >> inner & 1) == wanted:
            return True
    return False


def validate_quasimodel(q: Quasimodel) -> QuasimodelReport:
    """
    Check every quasimodel condition.

    Returns:
        Report whose ``checks`` covers types, local linearity, inverse
        monotonicity, implication and coimplication witnesses, sensibility,
        convexity, the four confluence conditions, seriality and the
        realization of eventualities and refutation of henceforths.
    """
    sigma = q.sigma
    problems: list[str] = []
    checks: dict[str, bool] = {}

    bad_types = [w.id for w in q.worlds if w.label & ~sigma.full_mask or not is_type(sigma, w.label)]
    checks["types"] = not bad_types
    problems += [f"world {wid}: label is not a Sigma-type" for wid in bad_types]

    components = q.components()
    linear = True
    for comp, ids in components.items():
        ranks = [q.world(wid).rank for wid in ids]
        if len(set(ranks)) != len(ranks):
            linear = False
            problems.append(f"component {comp}: two worlds share a rank")
    checks["locally-linear"] = linear

    monotone = True
    implication = True
    coimplication = True
    for ids in components.values():
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                if q.label(b) & ~q.label(a):
                    monotone = False
                    problems.append(f"worlds {a} <= {b}: label of {b} is not a subset")
        for wid in ids:
            label = q.label(wid)
            below = [v for v in ids if q.leq(v, wid)]
            above = [v for v in ids if q.leq(wid, v)]
            for pos, a, b in sigma.implications:
                if not label >> pos & 1 and not any(
                    q.label(v) >> a & 1 and not q.label(v) >> b & 1 for v in below
                ):
                    implication = False
                    problems.append(f"world {wid}: no witness below for {format_formula(sigma[pos])}")
            for pos, a, b in sigma.coimplications:
                if label >> pos & 1 and not any(
                    q.label(v) >> a & 1 and not q.label(v) >> b & 1 for v in above
                ):
                    coimplication = False
                    problems.append(f"world {wid}: no witness above for {format_formula(sigma[pos])}")
    checks["inversely-monotone"] = monotone
    checks["implication-witness"] = implication
    checks["coimplication-witness"] = coimplication

    insensible = sorted((a, b) for a, b in q.rel if not sensible_masks(sigma, q.label(a), q.label(b)))
    checks["sensible"] = not insensible
    problems += [f"pair ({a}, {b}) is not sensible" for a, b in insensible]

    structure = structural_checks(q.ids, q.ids, q.rel, q.leq, q.leq)
    checks.update(structure)
    problems += [f"relation fails {name}" for name, passed in structure.items() if not passed]

    g = q.graph()
    eventualities = True
    henceforths = True
    for w in q.worlds:
        for pos, inner, _ in sigma.eventualities:
            if w.label >> pos & 1 and not _realized(q, g, w.id, inner, True):
                eventualities = False
                problems.append(f"world {w.id}: {format_formula(sigma[pos])} is never realized")
        for pos, inner, _ in sigma.henceforths:
            if not w.label >> pos & 1 and not _realized(q, g, w.id, inner, False):
                henceforths = False
                problems.append(f"world {w.id}: {format_formula(sigma[pos])} is never refuted")
    checks["eventualities"] = eventualities
    checks["henceforths"] = henceforths
    return QuasimodelReport(checks, problems)


@dataclass(frozen=True)
class ConvexClosure:
    """Convex closure of a relation plus any precondition the input violated."""

    rel: frozenset[tuple[int, int]]
    violations: list[str]


def convex_closure(q: Quasimodel) -> ConvexClosure:
    """
    Close the successor relation of a labelled space under convexity.

    ``X rel' Y`` iff there are ``X1 <= X <= X2`` and ``Y1 <= Y <= Y2`` with
    ``X2 rel Y1`` and ``X1 rel Y2``. The input should be fully confluent and
    sensible; violations are reported rather than raised.
    """
    checks = structural_checks(q.ids, q.ids, q.rel, q.leq, q.leq)
    violations = [
        name for name in ("forth-down", "forth-up", "back-down", "back-up") if not checks[name]
    ]
    if any(not sensible_masks(q.sigma, q.label(a), q.label(b)) for a, b in q.rel):
        violations.append("sensible")

    components = q.components()
    closed: set[tuple[int, int]] = set()
    linked = {(q.world(a).component, q.world(b).component) for a, b in q.rel}
    for c, d in sorted(linked):
        pairs = [(a, b) for a, b in q.rel if q.world(a).component == c and q.world(b).component == d]
        for x in components[c]:
            for y in components[d]:
                upper = any(q.leq(x, x2) and q.leq(y1, y) for x2, y1 in pairs)
                lower = any(q.leq(x1, x) and q.leq(y, y2) for x1, y2 in pairs)
                if upper and lower:
                    closed.add((x, y))
    return ConvexClosure(frozenset(closed), violations)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def quotient(m: BiModel, sigma: Closure) -> Quasimodel:
    """
    Finite quasimodel of a bi-relational model, restricted to ``sigma``.

    Points ``(w, t)`` are identified when they carry the same label and the
    same set of labels occurs at their states. Classes sharing that set form
    one chain ordered by label inclusion; successors come from the flow and
    are then closed under convexity.
    """
    table = bi_heights(m, sigma)
    rows = [table[f] for f in sigma.formulas]

    def label(w: int, t: int) -> int:
        return sum(1 << pos for pos, row in enumerate(rows) if w < row[t])

    labels = {(w, t): label(w, t) for w in range(m.world_count) for t in m.flow.states}
    state_labels = {
        t: tuple(sorted({labels[w, t] for w in range(m.world_count)}, key=lambda x: (-_popcount(x), x)))
        for t in m.flow.states
    }

    component_keys = sorted(set(state_labels.values()))
    component_of = {key: i for i, key in enumerate(component_keys)}
    worlds: list[World] = []
    world_id: dict[tuple[int, int], int] = {}
    for key in component_keys:
        for rank, lab in enumerate(key):
            world_id[component_of[key], rank] = len(worlds)
            worlds.append(World(len(worlds), component_of[key], rank, lab))

    def cls(w: int, t: int) -> int:
        key = state_labels[t]
        return world_id[component_of[key], key.index(labels[w, t])]

    base = frozenset(
        (cls(w, t), cls(w, m.flow.successor(t)))
        for w in range(m.world_count)
        for t in m.flow.states
    )
    q = Quasimodel(sigma, tuple(worlds), base)
    closed = convex_closure(q)
    if closed.violations:
        logger.warning("quotient relation violates %s", ", ".join(closed.violations))
    logger.debug("quotient: %d classes, %d pairs", len(worlds), len(closed.rel))
    return Quasimodel(sigma, tuple(worlds), closed.rel)


def size_bound(sigma: Closure) -> int:
    """Upper bound on the number of worlds of a quotient over ``sigma``."""
    n = len(sigma)
    return (n + 1) * 2 ** (n * (n + 1) + 1)
