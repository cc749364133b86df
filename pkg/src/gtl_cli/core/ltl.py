"""Negative translation of classical LTL into GTL and crisp models."""

from __future__ import annotations

from fractions import Fraction

from gtl_cli.core.errors import ModelError
from gtl_cli.core.formula import Bottom, Formula, Var, _Binary, _Unary, neg
from gtl_cli.core.semantics import BiModel, RealModel, eval_bi


def translate(f: Formula) -> Formula:
    """Replace every variable ``p`` by ``~~p``; homomorphic elsewhere."""
    if isinstance(f, Var):
        return neg(neg(f))
    if isinstance(f, Bottom):
        return f
    if isinstance(f, _Binary):
        return type(f)(translate(f.left), translate(f.right))
    if isinstance(f, _Unary):
        return type(f)(translate(f.inner))
    raise TypeError(f"Unknown formula node: {f!r}")


def is_crisp(m: RealModel) -> bool:
    """Whether every variable value is 0 or 1."""
    return m.is_crisp()


def crispify(m: RealModel) -> RealModel:
    """
    The crisp model assigning each variable the value of its double negation.

    A variable is 1 wherever it was positive and 0 elsewhere, so translated
    formulas take the same value in ``m`` and in the result.
    """
    valuation = {
        name: tuple(Fraction(1) if v > 0 else Fraction(0) for v in row)
        for name, row in m.valuation.items()
    }
    return RealModel(m.flow, valuation)


def classical_holds(f: Formula, m: RealModel, t: int) -> bool:
    """
    Classical LTL truth of ``f`` at state ``t`` of a crisp model.

    Evaluated on the one-world bi-relational model with the same flow, where
    the Goedel connectives collapse to the classical ones.

    Raises:
        ModelError: If ``m`` is not crisp or ``t`` is not a state
    """
    if not m.is_crisp():
        raise ModelError("Classical truth needs a crisp model (values 0 or 1)")
    if not 0 <= t < m.flow.state_count:
        raise ModelError(f"State {t} outside 0..{m.flow.state_count - 1}")
    valuation = {
        name: frozenset((0, s) for s, v in enumerate(row) if v == 1)
        for name, row in m.valuation.items()
    }
    return (0, t) in eval_bi(BiModel(1, m.flow, valuation), f)
