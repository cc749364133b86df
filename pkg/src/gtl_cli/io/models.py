"""JSON codec for real and bi-relational model files."""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from gtl_cli.core.errors import ModelError
from gtl_cli.core.semantics import BiModel, Model, PeriodicFlow, RealModel


def _require(data: dict[str, Any], key: str) -> Any:
    if key not in data:
        raise ModelError(f"Model file is missing '{key}'")
    return data[key]


def _rational(value: Any, name: str) -> Fraction:
    # Floats are rejected: values must be exact
    if isinstance(value, bool) or isinstance(value, float):
        raise ModelError(f"Value {value!r} of {name!r} must be an integer or a 'num/den' string")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ModelError(f"Value {value!r} of {name!r} is not a rational") from None
    raise ModelError(f"Value {value!r} of {name!r} must be an integer or a 'num/den' string")


def model_from_dict(data: dict[str, Any]) -> Model:
    """
    Decode a model object.

    Raises:
        ModelError: If a field is missing or malformed, or a bi-relational
            valuation is not downward closed
    """
    if not isinstance(data, dict):
        raise ModelError("Model file must contain a JSON object")
    kind = _require(data, "kind")
    flow = PeriodicFlow(int(_require(data, "states")), int(_require(data, "loopback")))
    valuation = _require(data, "valuation")
    if not isinstance(valuation, dict):
        raise ModelError("'valuation' must be an object")

    if kind == "real":
        return RealModel(
            flow,
            {name: tuple(_rational(v, name) for v in row) for name, row in valuation.items()},
        )
    if kind == "bi":
        pairs = {}
        for name, row in valuation.items():
            try:
                pairs[name] = frozenset((int(w), int(t)) for w, t in row)
            except (TypeError, ValueError):
                raise ModelError(f"Valuation of {name!r} must be a list of [world, state] pairs") from None
        return BiModel(int(_require(data, "worlds")), flow, pairs)
    raise ModelError(f"Unknown model kind {kind!r} (expected 'real' or 'bi')")


def model_to_dict(m: Model) -> dict[str, Any]:
    if isinstance(m, RealModel):
        return {
            "kind": "real",
            "states": m.flow.state_count,
            "loopback": m.flow.loopback,
            "valuation": {name: [str(v) for v in row] for name, row in m.valuation.items()},
        }
    return {
        "kind": "bi",
        "worlds": m.world_count,
        "states": m.flow.state_count,
        "loopback": m.flow.loopback,
        "valuation": {name: [list(p) for p in sorted(pairs)] for name, pairs in m.valuation.items()},
    }


def load_model(path: str | Path) -> Model:
    """Read a model file."""
    with open(path, encoding="utf-8") as f:
        return model_from_dict(json.load(f))


def dump_model(m: Model, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model_to_dict(m), f, indent=2)
        f.write("\n")


def load_real_model(path: str | Path) -> RealModel:
    m = load_model(path)
    if not isinstance(m, RealModel):
        raise ModelError(f"'{path}' holds a bi-relational model, expected kind 'real'")
    return m


def load_bi_model(path: str | Path) -> BiModel:
    m = load_model(path)
    if not isinstance(m, BiModel):
        raise ModelError(f"'{path}' holds a real model, expected kind 'bi'")
    return m
