"""Formula syntax: AST, parser, printer and subformula closure.

Surface grammar (tightest binding first)::

    atom    := 'bot' | 'top' | IDENT | '(' formula ')'
    unary   := ('~' | 'X' | 'F' | 'G') unary | atom
    conj    := unary ('&' unary)*
    disj    := conj ('|' conj)*
    formula := disj ('->' disj)*      right associative
             | disj ('<-' disj)*      left associative

``~a`` is read as ``a -> bot`` and ``top`` as ``bot -> bot``; neither is kept
in the tree. Mixing ``->`` and ``<-`` without parentheses is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from gtl_cli.core.errors import FormulaSyntaxError


class Formula:
    """Base class of the nine formula constructors."""

    __slots__ = ()

    def children(self) -> tuple[Formula, ...]:
        return ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class And(_Binary):
    pass


@dataclass(frozen=True)
class Or(_Binary):
    pass


@dataclass(frozen=True)
class Implies(_Binary):
    pass


@dataclass(frozen=True)
class Coimplies(_Binary):
    pass


@dataclass(frozen=True)
class _Unary(Formula):
    inner: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.inner,)


@dataclass(frozen=True)
class Next(_Unary):
    pass


@dataclass(frozen=True)
class Eventually(_Unary):
    pass


@dataclass(frozen=True)
class Henceforth(_Unary):
    pass


BOTTOM = Bottom()
TOP = Implies(BOTTOM, BOTTOM)


def neg(f: Formula) -> Formula:
    """Return ``f -> bot``."""
    return Implies(f, BOTTOM)


def variables(f: Formula) -> set[str]:
    """Return the variable names occurring in a formula."""
    names: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            names.add(g.name)
        stack.extend(g.children())
    return names


# --------------------------------------------------------------------------
# Tokenizer
# --------------------------------------------------------------------------

_SYMBOLS = {
    "~": "NOT",
    "&": "AND",
    "|": "OR",
    "(": "LPAREN",
    ")": "RPAREN",
    "X": "NEXT",
    "F": "EVENTUALLY",
    "G": "HENCEFORTH",
}

_KEYWORDS = {"bot": "BOT", "top": "TOP"}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, column = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            column = 1
            continue
        if ch.isspace():
            i += 1
            column += 1
            continue
        two = text[i:i + 2]
        if two in ("->", "<-"):
            tokens.append(_Token("IMP" if two == "->" else "COIMP", two, line, column))
            i += 2
            column += 2
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(_SYMBOLS[ch], ch, line, column))
            i += 1
            column += 1
            continue
        if "a" <= ch <= "z":
            j = i + 1
            while j < len(text) and (text[j].isascii() and (text[j].isalnum() or text[j] == "_")):
                j += 1
            word = text[i:j]
            tokens.append(_Token(_KEYWORDS.get(word, "IDENT"), word, line, column))
            column += j - i
            i = j
            continue
        raise FormulaSyntaxError(f"Unexpected character {ch!r}", line, column)
    tokens.append(_Token("EOF", "", line, column))
    return tokens


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

_UNARY = {"NOT": None, "NEXT": Next, "EVENTUALLY": Eventually, "HENCEFORTH": Henceforth}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def fail(self, message: str, token: Optional[_Token] = None):
        token = token or self.current
        raise FormulaSyntaxError(message, token.line, token.column)

    def parse(self) -> Formula:
        if self.current.kind == "EOF":
            self.fail("Empty formula")
        f = self.formula()
        if self.current.kind != "EOF":
            self.fail(f"Unexpected {self.current.text!r}")
        return f

    def formula(self) -> Formula:
        operands = [self.disj()]
        arrow: Optional[str] = None
        while self.current.kind in ("IMP", "COIMP"):
            token = self.advance()
            if arrow is not None and token.kind != arrow:
                self.fail("Cannot mix '->' and '<-' without parentheses", token)
            arrow = token.kind
            operands.append(self.disj())

        if arrow == "IMP":
            result = operands[-1]
            for left in reversed(operands[:-1]):
                result = Implies(left, result)
            return result
        result = operands[0]
        for right in operands[1:]:
            result = Coimplies(result, right)
        return result

    def disj(self) -> Formula:
        result = self.conj()
        while self.current.kind == "OR":
            self.advance()
            result = Or(result, self.conj())
        return result

    def conj(self) -> Formula:
        result = self.unary()
        while self.current.kind == "AND":
            self.advance()
            result = And(result, self.unary())
        return result

    def unary(self) -> Formula:
        kind = self.current.kind
        if kind in _UNARY:
            self.advance()
            inner = self.unary()
            if kind == "NOT":
                return neg(inner)
            return _UNARY[kind](inner)
        return self.atom()

    def atom(self) -> Formula:
        token = self.advance()
        if token.kind == "BOT":
            return BOTTOM
        if token.kind == "TOP":
            return TOP
        if token.kind == "IDENT":
            return Var(token.text)
        if token.kind == "LPAREN":
            inner = self.formula()
            if self.current.kind != "RPAREN":
                self.fail("Expected ')'")
            self.advance()
            return inner
        if token.kind == "EOF":
            self.fail("Unexpected end of formula", token)
        self.fail(f"Unexpected {token.text!r}", token)
        raise AssertionError("unreachable")


def parse(text: str) -> Formula:
    """
    Parse formula text into an AST.

    Args:
        text: Formula in the ASCII surface syntax

    Returns:
        Parsed Formula

    Raises:
        FormulaSyntaxError: With line and column of the offending token
    """
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# Printer
# --------------------------------------------------------------------------

_BINARY_SYMBOL = {And: "&", Or: "|", Implies: "->", Coimplies: "<-"}
_UNARY_SYMBOL = {Next: "X", Eventually: "F", Henceforth: "G"}

# Binding strength used for parenthesization
_ARROW, _OR, _AND, _PREFIX, _ATOM = range(1, 6)


def _precedence(f: Formula) -> int:
    if isinstance(f, (Implies, Coimplies)):
        return _ARROW
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    if isinstance(f, _Unary):
        return _PREFIX
    return _ATOM


def _wrap(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def format_formula(f: Formula) -> str:
    """Print a formula with the fewest parentheses that parse back to it."""
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, _Unary):
        inner = format_formula(f.inner)
        return f"{_UNARY_SYMBOL[type(f)]} {_wrap(inner, _precedence(f.inner) < _PREFIX)}"
    if isinstance(f, _Binary):
        left, right = format_formula(f.left), format_formula(f.right)
        lp, rp = _precedence(f.left), _precedence(f.right)
        if isinstance(f, Implies):
            left_paren = lp <= _ARROW
            right_paren = isinstance(f.right, Coimplies)
        elif isinstance(f, Coimplies):
            left_paren = isinstance(f.left, Implies)
            right_paren = rp <= _ARROW
        else:
            level = _precedence(f)
            left_paren = lp < level
            right_paren = rp <= level
        symbol = _BINARY_SYMBOL[type(f)]
        return f"{_wrap(left, left_paren)} {symbol} {_wrap(right, right_paren)}"
    raise TypeError(f"Not a formula: {f!r}")


# --------------------------------------------------------------------------
# Closure
# --------------------------------------------------------------------------

# Operation codes used by the bit-set engines
OP_BOTTOM, OP_VAR, OP_AND, OP_OR, OP_IMPLIES, OP_COIMPLIES, OP_NEXT, OP_EVENTUALLY, OP_HENCEFORTH = (
    range(9)
)

_OP_CODE = {
    Bottom: OP_BOTTOM,
    Var: OP_VAR,
    And: OP_AND,
    Or: OP_OR,
    Implies: OP_IMPLIES,
    Coimplies: OP_COIMPLIES,
    Next: OP_NEXT,
    Eventually: OP_EVENTUALLY,
    Henceforth: OP_HENCEFORTH,
}

FREE_OPS = frozenset({OP_VAR, OP_NEXT, OP_EVENTUALLY, OP_HENCEFORTH})


class Closure:
    """
    A subformula-closed, topologically ordered set of formulas.

    Positions index bit sets: bit ``i`` stands for ``formulas[i]``.
    """

    def __init__(self, formulas: Sequence[Formula]):
        self.formulas: tuple[Formula, ...] = tuple(formulas)
        self.index: dict[Formula, int] = {}
        for i, f in enumerate(self.formulas):
            if f in self.index:
                raise ValueError(f"Duplicate formula in closure: {f}")
            for child in f.children():
                if child not in self.index:
                    raise ValueError(
                        f"Closure is not subformula-closed and ordered: "
                        f"{child} must precede {f}"
                    )
            self.index[f] = i

        # (op, left, right) per position; -1 where unused
        self.ops: tuple[tuple[int, int, int], ...] = tuple(
            (
                _OP_CODE[type(f)],
                self.index[f.children()[0]] if f.children() else -1,
                self.index[f.children()[1]] if len(f.children()) == 2 else -1,
            )
            for f in self.formulas
        )
        self.bottom: Optional[int] = self.index.get(BOTTOM)
        self.free: tuple[int, ...] = tuple(
            i for i, (op, _, _) in enumerate(self.ops) if op in FREE_OPS
        )
        self.nexts = self._of(OP_NEXT)
        self.eventualities = self._of(OP_EVENTUALLY)
        self.henceforths = self._of(OP_HENCEFORTH)
        self.implications = self._of(OP_IMPLIES)
        self.coimplications = self._of(OP_COIMPLIES)

        # Bits that decide whether a pair of types is sensible
        src = tgt = 0
        for pos, inner, _ in self.nexts:
            src |= 1 << pos
            tgt |= 1 << inner
        for pos, inner, _ in self.eventualities + self.henceforths:
            src |= (1 << pos) | (1 << inner)
            tgt |= 1 << pos
        self.source_mask = src
        self.target_mask = tgt
        self._hash = hash(self.formulas)

    def _of(self, op: int) -> tuple[tuple[int, int, int], ...]:
        return tuple((i, a, b) for i, (o, a, b) in enumerate(self.ops) if o == op)

    def __len__(self) -> int:
        return len(self.formulas)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.formulas)

    def __getitem__(self, i: int) -> Formula:
        return self.formulas[i]

    def __contains__(self, f: object) -> bool:
        return f in self.index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Closure) and self.formulas == other.formulas

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Closure([{', '.join(str(f) for f in self.formulas)}])"

    @property
    def root(self) -> Optional[Formula]:
        """The last formula, i.e. the one the closure was built from."""
        return self.formulas[-1] if self.formulas else None

    @property
    def full_mask(self) -> int:
        return (1 << len(self.formulas)) - 1

    def position(self, f: Formula) -> int:
        try:
            return self.index[f]
        except KeyError:
            raise ValueError(f"Formula {f} is not in the closure") from None

    def mask_of(self, formulas: Iterable[Formula]) -> int:
        mask = 0
        for f in formulas:
            mask |= 1 << self.position(f)
        return mask

    def members(self, mask: int) -> list[Formula]:
        return [f for i, f in enumerate(self.formulas) if mask >> i & 1]

    def format_mask(self, mask: int) -> str:
        return "{" + ", ".join(format_formula(f) for f in self.members(mask)) + "}"

    def variable_names(self) -> list[str]:
        return sorted(f.name for f in self.formulas if isinstance(f, Var))


def closure(*formulas: Formula) -> Closure:
    """
    Build the least subformula-closed set containing the given formulas.

    Children precede parents; with a single argument the argument is last.
    """
    ordered: list[Formula] = []
    seen: set[Formula] = set()

    def visit(f: Formula) -> None:
        if f in seen:
            return
        for child in f.children():
            visit(child)
        seen.add(f)
        ordered.append(f)

    for f in formulas:
        visit(f)
    return Closure(ordered)
