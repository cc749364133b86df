"""JSON codecs for witnesses, quasimodels and unwinding grids, plus DOT export."""

import json
from pathlib import Path
from typing import Any, Optional

import networkx as nx

from gtl_cli.core.decision import Witness
from gtl_cli.core.errors import CertificateFormatError, FormulaSyntaxError
from gtl_cli.core.formula import Closure, Formula, closure, format_formula, parse
from gtl_cli.core.moments import Moment
from gtl_cli.core.quasimodel import Quasimodel, World
from gtl_cli.core.successor import ConvexRelation
from gtl_cli.core.unwind import Defect, FiniteGrid


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def write_json(data: Any, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def _field(data: Any, key: str, kind: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise CertificateFormatError(f"{kind} is missing '{key}'")
    return data[key]


def _formula(text: Any, kind: str) -> Formula:
    if not isinstance(text, str):
        raise CertificateFormatError(f"{kind}: formulas must be strings, got {text!r}")
    try:
        return parse(text)
    except FormulaSyntaxError as e:
        raise CertificateFormatError(f"{kind}: cannot parse {text!r}: {e}") from None


def _pairs(rows: Any, kind: str) -> list[tuple[int, int]]:
    try:
        return [(int(a), int(b)) for a, b in rows]
    except (TypeError, ValueError):
        raise CertificateFormatError(f"{kind}: expected a list of [int, int] pairs") from None


# Witnesses

def witness_to_dict(w: Witness) -> dict[str, Any]:
    return {
        "formula": format_formula(w.formula),
        "pivot": w.pivot,
        "moments": [m.to_lists() for m in w.moments],
        "relations": [[list(p) for p in r.sorted_pairs()] for r in w.relations],
    }


def witness_from_dict(data: Any, formula: Optional[Formula] = None) -> Witness:
    """
    Decode a witness object.

    Args:
        data: Decoded JSON
        formula: Formula to read the moments against (default: the one recorded)

    Raises:
        CertificateFormatError: If the object is malformed or mentions
            formulas outside the closure
    """
    kind = "witness"
    f = formula if formula is not None else _formula(_field(data, "formula", kind), kind)
    sigma = closure(f)
    pivot = _field(data, "pivot", kind)
    if not isinstance(pivot, int) or isinstance(pivot, bool):
        raise CertificateFormatError("witness: 'pivot' must be an integer")

    moments = []
    for j, chain in enumerate(_field(data, "moments", kind)):
        try:
            masks = tuple(sigma.mask_of(_formula(s, kind) for s in members) for members in chain)
        except CertificateFormatError:
            raise
        except (TypeError, ValueError) as e:
            raise CertificateFormatError(f"witness: moment {j}: {e}") from None
        moments.append(Moment(sigma, masks))

    relations = []
    for j, rows in enumerate(_field(data, "relations", kind)):
        source_len = len(moments[j]) if j < len(moments) else 0
        target_len = len(moments[j + 1]) if j + 1 < len(moments) else 0
        relations.append(
            ConvexRelation.from_pairs(source_len, target_len, _pairs(rows, f"witness relation {j}"))
        )
    return Witness(f, tuple(moments), pivot, tuple(relations))


def load_witness(path: str | Path, formula: Optional[Formula] = None) -> Witness:
    return witness_from_dict(read_json(path), formula)


# Quasimodels

def quasimodel_to_dict(q: Quasimodel) -> dict[str, Any]:
    return {
        "sigma": [format_formula(f) for f in q.sigma],
        "worlds": [
            {
                "id": w.id,
                "component": w.component,
                "rank": w.rank,
                "label": [i for i in range(len(q.sigma)) if w.label >> i & 1],
            }
            for w in q.worlds
        ],
        "rel": [list(p) for p in sorted(q.rel)],
    }


def quasimodel_from_dict(data: Any) -> Quasimodel:
    kind = "quasimodel"
    try:
        sigma = Closure([_formula(s, kind) for s in _field(data, "sigma", kind)])
    except CertificateFormatError:
        raise
    except ValueError as e:
        raise CertificateFormatError(f"quasimodel: bad closure: {e}") from None

    worlds = []
    for entry in _field(data, "worlds", kind):
        try:
            label = 0
            for i in entry["label"]:
                if not 0 <= int(i) < len(sigma):
                    raise CertificateFormatError(f"quasimodel: label index {i} outside the closure")
                label |= 1 << int(i)
            worlds.append(World(int(entry["id"]), int(entry["component"]), int(entry["rank"]), label))
        except CertificateFormatError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise CertificateFormatError(f"quasimodel: malformed world {entry!r}: {e}") from None
    try:
        return Quasimodel(sigma, tuple(worlds), frozenset(_pairs(_field(data, "rel", kind), kind)))
    except CertificateFormatError:
        raise
    except ValueError as e:
        raise CertificateFormatError(f"quasimodel: {e}") from None


def load_quasimodel(path: str | Path) -> Quasimodel:
    return quasimodel_from_dict(read_json(path))


# Grids

def _defect_to_dict(grid: FiniteGrid, d: Defect) -> dict[str, Any]:
    entry: dict[str, Any] = {"kind": d.kind, "path": d.path}
    if d.formula >= 0:
        entry["formula"] = format_formula(grid.quasimodel.sigma[d.formula])
    if d.column >= 0:
        entry["column"] = d.column
    return entry


def grid_to_dict(grid: FiniteGrid) -> dict[str, Any]:
    """Paths (least first), the remaining queue and the processing log."""
    return {
        "length": grid.length,
        "paths": [{"id": pid, "worlds": list(grid.paths[pid])} for pid in grid.order],
        "queue": [_defect_to_dict(grid, d) for d in grid.queue],
        "processed": [
            {
                "step": p.step,
                "defect": _defect_to_dict(grid, p.defect),
                "length": p.length,
                "inserted": p.inserted,
            }
            for p in grid.processed
        ],
    }


# DOT

def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def quasimodel_graph(q: Quasimodel) -> nx.DiGraph:
    """Successor graph with display attributes; dashed edges give the world order."""
    g = nx.DiGraph()
    for w in q.worlds:
        g.add_node(
            w.id,
            label=_quote(f"{w.id} (c{w.component} r{w.rank})\\n{q.sigma.format_mask(w.label)}"),
            shape="box",
        )
    for a, b in sorted(q.rel):
        g.add_edge(a, b)
    for ids in q.components().values():
        for lower, upper in zip(ids, ids[1:]):
            if not g.has_edge(lower, upper):
                g.add_edge(lower, upper, style="dashed", arrowhead="none")
    return g


def quasimodel_to_dot(q: Quasimodel) -> str:
    return nx.nx_pydot.to_pydot(quasimodel_graph(q)).to_string()


def write_dot(q: Quasimodel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(quasimodel_to_dot(q))
