"""Concrete syntax for MTL formulas: a recursive-descent parser and two printers.

Grammar, loosest to tightest binding::

    iff   := imp ('<->' imp)*
    imp   := or ('->' imp)?                 right associative
    or    := and ('|' and)*
    and   := temp ('&' temp)*
    temp  := unary (('U'|'V'|'R'|'S') [bound] unary)*
    unary := ('!' | 'X' | 'Y' | 'Z' | ('G'|'F'|'H'|'O') [bound]) unary | primary
    primary := IDENT | 'TRUE' | 'FALSE' | 'LAST' | '(' iff ')'
    bound := '[' INT ',' INT ']'
"""
from __future__ import annotations

import enum
import re
from typing import Callable

from . import mtl
from .mtl import (
    And,
    Atom,
    F,
    FalseF,
    Formula,
    G,
    H,
    Iff,
    Implies,
    Interval,
    LastAtom,
    Not,
    O,
    Or,
    R,
    S,
    TrueF,
    U,
    X,
    Y,
    Z,
)


class Dialect(enum.Enum):
    CANONICAL = "canonical"
    NUXMV = "nuxmv"


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op><->|->|[()\[\],!&|]))"
)

UNARY_BOUNDED = {"G": G, "F": F, "H": H, "O": O}
UNARY_STEP = {"X": X, "Y": Y, "Z": Z}
BINARY_TEMPORAL = {"U": U, "V": R, "R": R, "S": S}
CONSTANTS = {"TRUE": mtl.TRUE, "FALSE": mtl.FALSE, "LAST": mtl.LAST}
KEYWORDS = frozenset(UNARY_BOUNDED) | frozenset(UNARY_STEP) | frozenset(BINARY_TEMPORAL) | frozenset(CONSTANTS)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip()) if text[pos].isspace() else pos
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def at(self, value: str) -> bool:
        kind, val, _ = self.tok
        return kind in ("op", "ident") and val == value

    def expect(self, value: str) -> None:
        if not self.at(value):
            _, val, pos = self.tok
            raise FormulaSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)
        self.i += 1

    def parse(self) -> Formula:
        f = self.iff()
        kind, val, pos = self.tok
        if kind != "eof":
            raise FormulaSyntaxError(f"unexpected {val!r}", pos)
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.at("<->"):
            self.i += 1
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.at("->"):
            self.i += 1
            return Implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.temporal()
        while self.at("&"):
            self.i += 1
            f = And(f, self.temporal())
        return f

    def temporal(self) -> Formula:
        f = self.unary()
        while self.tok[0] == "ident" and self.tok[1] in BINARY_TEMPORAL:
            ctor = BINARY_TEMPORAL[self.tok[1]]
            self.i += 1
            interval = self.bound()
            f = ctor(interval, f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, val, pos = self.tok
        if self.at("!"):
            self.i += 1
            return Not(self.unary())
        if kind == "ident" and val in UNARY_STEP:
            self.i += 1
            if self.at("["):
                raise FormulaSyntaxError(f"operator {val} takes no bound", self.tok[2])
            return UNARY_STEP[val](self.unary())
        if kind == "ident" and val in UNARY_BOUNDED:
            self.i += 1
            interval = self.bound()
            return UNARY_BOUNDED[val](interval, self.unary())
        return self.primary()

    def bound(self) -> Interval:
        if not self.at("["):
            return mtl.UNBOUNDED
        pos = self.tok[2]
        self.i += 1
        lo = self.integer()
        self.expect(",")
        hi = self.integer()
        self.expect("]")
        if lo > hi:
            raise FormulaSyntaxError(f"empty bound [{lo},{hi}]", pos)
        return Interval(lo, hi)

    def integer(self) -> int:
        kind, val, pos = self.tok
        if kind != "int":
            raise FormulaSyntaxError(f"expected integer, found {val!r}", pos)
        self.i += 1
        return int(val)

    def primary(self) -> Formula:
        kind, val, pos = self.tok
        if self.at("("):
            self.i += 1
            f = self.iff()
            self.expect(")")
            return f
        if kind == "ident":
            if val in CONSTANTS:
                self.i += 1
                return CONSTANTS[val]
            if val in KEYWORDS:
                raise FormulaSyntaxError(f"operator {val} is missing an operand", pos)
            self.i += 1
            return Atom(val)
        raise FormulaSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


def parse_formulas(text: str) -> list[Formula]:
    """One formula per non-blank line; ``#`` starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_formula(line))
    return out


_SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
_NAME = {X: "X", Y: "Y", Z: "Z", G: "G", F: "F", H: "H", O: "O", U: "U", R: "V", S: "S"}


def _leaf(f: Formula) -> str | None:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, TrueF):
        return "TRUE"
    if isinstance(f, FalseF):
        return "FALSE"
    if isinstance(f, LastAtom):
        return "LAST"
    return None


def _render(f: Formula, wrap: Callable[[Formula, str, bool], str], root: bool) -> str:
    leaf = _leaf(f)
    if leaf is not None:
        return leaf
    if isinstance(f, Not):
        body = "! " + _render(f.arg, wrap, False)
    elif isinstance(f, (X, Y, Z)):
        body = f"{_NAME[type(f)]} {_render(f.arg, wrap, False)}"
    elif isinstance(f, (G, F, H, O)):
        body = f"{_NAME[type(f)]}{f.interval} {_render(f.arg, wrap, False)}"
    elif isinstance(f, (U, R, S)):
        body = (
            f"{_render(f.left, wrap, False)} {_NAME[type(f)]}{f.interval} "
            f"{_render(f.right, wrap, False)}"
        )
    else:
        body = f"{_render(f.left, wrap, False)} {_SYMBOL[type(f)]} {_render(f.right, wrap, False)}"
    return wrap(f, body, root)


def _canonical_wrap(f: Formula, body: str, root: bool) -> str:
    if root or not isinstance(f, (And, Or, Implies, Iff, U, R, S)):
        return body
    return f"({body})"


def _full_wrap(f: Formula, body: str, root: bool) -> str:
    return f"({body})"


def print_formula(f: Formula, dialect: Dialect = Dialect.CANONICAL) -> str:
    if dialect is Dialect.NUXMV:
        return _render(expand_bounded(f), _full_wrap, True)
    return _render(f, _canonical_wrap, True)


def _weak_x(f: Formula, k: int) -> Formula:
    # !X^k !f: f holds k steps ahead, or the trace ends before that
    return f if k == 0 else Not(mtl.x_power(Not(f), k))


def _y_power(f: Formula, k: int) -> Formula:
    for _ in range(k):
        f = Y(f)
    return f


def _z_power(f: Formula, k: int) -> Formula:
    for _ in range(k):
        f = Z(f)
    return f


def _until_terms(left: Formula, right: Formula, lo: int, hi: int, step: Callable[[Formula, int], Formula]) -> Formula:
    terms = []
    for j in range(lo, hi + 1):
        terms.append(mtl.conj(*[step(left, i) for i in range(j)], step(right, j)))
    return mtl.disj(*terms)


def expand_bounded(f: Formula) -> Formula:
    """Rewrite every bounded operator into X/Y/Z and boolean connectives.

    Unbounded operators are kept.  The rewrite is exact on finite traces and on
    infinite ones: bounded ``G``/``H``/``R`` use weak steps so that windows
    running past either end of a finite trace are vacuous.
    """
    kids = tuple(expand_bounded(k) for k in f.children())
    if kids:
        f = mtl.rebuild(f, kids)
    interval = getattr(f, "interval", None)
    if interval is None or not interval.bounded:
        return f
    lo, hi = interval.lo, interval.hi
    assert hi is not None
    span = range(lo, hi + 1)
    if isinstance(f, F):
        return mtl.disj(*[mtl.x_power(f.arg, j) for j in span])
    if isinstance(f, G):
        return mtl.conj(*[_weak_x(f.arg, j) for j in span])
    if isinstance(f, O):
        return mtl.disj(*[_y_power(f.arg, j) for j in span])
    if isinstance(f, H):
        return mtl.conj(*[_z_power(f.arg, j) for j in span])
    if isinstance(f, U):
        return _until_terms(f.left, f.right, lo, hi, mtl.x_power)
    if isinstance(f, S):
        return _until_terms(f.left, f.right, lo, hi, _y_power)
    if isinstance(f, R):
        always = mtl.conj(*[_weak_x(f.right, j) for j in span])
        released = mtl.disj(
            *[
                mtl.conj(mtl.x_power(f.left, j), *[mtl.x_power(f.right, i) for i in range(lo, j + 1)])
                for j in span
            ]
        )
        return Or(always, released)
    raise TypeError(f"unexpected node {f!r}")
