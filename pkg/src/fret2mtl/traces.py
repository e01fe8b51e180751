"""Traces and the reference forcing relation.

:func:`eval` and :func:`eval_lasso` follow the semantic clauses one
quantifier at a time.  They are slow and meant as the ground truth that the
vectorised evaluators in :mod:`fret2mtl.batch` are tested against.

Until is read with the left operand required on ``[t, t0)``, which is the
reading under which Release is its dual.  Release follows the disjunctive
clause: either the right operand holds throughout the window, or the left
operand occurs inside the window with the right one holding (inside the
window) up to and including that point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

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

State = frozenset


def _state(s: Iterable[str]) -> frozenset[str]:
    return frozenset(s)


@dataclass(frozen=True)
class Trace:
    states: tuple[frozenset[str], ...]

    def __init__(self, states: Iterable[Iterable[str]]) -> None:
        object.__setattr__(self, "states", tuple(_state(s) for s in states))
        if not self.states:
            raise ValueError("a finite trace needs at least one position")

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class LassoTrace:
    """The infinite trace ``prefix . loop . loop . ...``."""

    prefix: tuple[frozenset[str], ...]
    loop: tuple[frozenset[str], ...]

    def __init__(self, prefix: Iterable[Iterable[str]], loop: Iterable[Iterable[str]]) -> None:
        object.__setattr__(self, "prefix", tuple(_state(s) for s in prefix))
        object.__setattr__(self, "loop", tuple(_state(s) for s in loop))
        if not self.loop:
            raise ValueError("a lasso needs a nonempty loop")

    def pos(self, t: int) -> int:
        p, l = len(self.prefix), len(self.loop)
        return t if t < p else p + (t - p) % l

    def state(self, t: int) -> frozenset[str]:
        i = self.pos(t)
        p = len(self.prefix)
        return self.prefix[i] if i < p else self.loop[i - p]

    def unroll(self, times: int = 1) -> LassoTrace:
        return LassoTrace(self.prefix + self.loop * times, self.loop)


AnyTrace = Union[Trace, LassoTrace]


# ---------------------------------------------------------------- file format

LOOP_MARK = "---loop---"


def format_trace(trace: AnyTrace, t: int | None = None) -> str:
    def line(s: frozenset[str]) -> str:
        return ",".join(sorted(s)) if s else "-"

    if isinstance(trace, Trace):
        lines = [line(s) for s in trace.states]
    else:
        lines = [line(s) for s in trace.prefix] + [LOOP_MARK] + [line(s) for s in trace.loop]
    if t is not None:
        lines.append(f"t={t}")
    return "\n".join(lines) + "\n"


def parse_trace_text(text: str) -> tuple[AnyTrace, int | None]:
    """Parse the trace file format; returns the trace and an optional ``t=`` trailer."""
    prefix: list[frozenset[str]] = []
    loop: list[frozenset[str]] | None = None
    t = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == LOOP_MARK:
            if loop is not None:
                raise ValueError("more than one loop separator")
            loop = []
            continue
        if line.startswith("t="):
            t = int(line[2:])
            continue
        if line == "-":
            state: frozenset[str] = frozenset()
        else:
            names = [n.strip() for n in line.split(",")]
            if any(not n for n in names):
                raise ValueError(f"malformed state line {raw!r}")
            state = frozenset(names)
        (prefix if loop is None else loop).append(state)
    if loop is None:
        return Trace(prefix), t
    return LassoTrace(prefix, loop), t


def parse_trace(text: str) -> AnyTrace:
    return parse_trace_text(text)[0]


# ---------------------------------------------------------- finite semantics


def eval(f: Formula, trace: Trace, t: int) -> bool:  # noqa: A001
    n = len(trace)
    if not 0 <= t < n:
        raise IndexError(f"position {t} outside trace of length {n}")
    memo: dict[tuple[int, int], bool] = {}
    states = trace.states

    def ev(g: Formula, t: int) -> bool:
        key = (id(g), t)
        if key in memo:
            return memo[key]
        res = _finite_clause(g, t, n, states, ev)
        memo[key] = res
        return res

    return ev(f, t)


def _finite_clause(g, t, n, states, ev) -> bool:
    if isinstance(g, Atom):
        return g.name in states[t]
    if isinstance(g, LastAtom):
        return t == n - 1
    if isinstance(g, TrueF):
        return True
    if isinstance(g, FalseF):
        return False
    res = _boolean_clause(g, t, ev)
    if res is not None:
        return res
    if isinstance(g, (Y, Z, O, H, S)):
        return _past_clause(g, t, ev)
    if isinstance(g, X):
        return t + 1 < n and ev(g.arg, t + 1)
    iv = g.interval
    # window of future positions the interval allows, clipped to the trace
    window = [t0 for t0 in range(t, n) if (t0 - t) in iv]
    if isinstance(g, F):
        return any(ev(g.arg, t0) for t0 in window)
    if isinstance(g, G):
        return all(ev(g.arg, t0) for t0 in window)
    if isinstance(g, U):
        return any(ev(g.right, t0) and all(ev(g.left, t1) for t1 in range(t, t0)) for t0 in window)
    if isinstance(g, R):
        return _release(g, t, window, ev)
    raise TypeError(f"unknown node {g!r}")


def _boolean_clause(g, t, ev) -> bool | None:
    if isinstance(g, Not):
        return not ev(g.arg, t)
    if isinstance(g, And):
        return ev(g.left, t) and ev(g.right, t)
    if isinstance(g, Or):
        return ev(g.left, t) or ev(g.right, t)
    if isinstance(g, Implies):
        return (not ev(g.left, t)) or ev(g.right, t)
    if isinstance(g, Iff):
        return ev(g.left, t) == ev(g.right, t)
    return None


def _past_clause(g, t, ev) -> bool:
    if isinstance(g, Y):
        return t > 0 and ev(g.arg, t - 1)
    if isinstance(g, Z):
        return t == 0 or ev(g.arg, t - 1)
    window = [t0 for t0 in range(t, -1, -1) if (t - t0) in g.interval]
    if isinstance(g, O):
        return any(ev(g.arg, t0) for t0 in window)
    if isinstance(g, H):
        return all(ev(g.arg, t0) for t0 in window)
    return any(ev(g.right, t0) and all(ev(g.left, t1) for t1 in range(t0 + 1, t + 1)) for t0 in window)


def _release(g: R, t: int, window: list[int], ev) -> bool:
    if all(ev(g.right, t0) for t0 in window):
        return True
    return any(
        ev(g.left, t0) and all(ev(g.right, t1) for t1 in window if t1 <= t0) for t0 in window
    )


def holds_globally(f: Formula, trace: Trace) -> bool:
    return all(eval(f, trace, t) for t in range(len(trace)))


# ------------------------------------------------------- ultimately periodic


def stable_from(f: Formula, prefix_len: int, loop_len: int) -> int:
    """A position from which the truth value of ``f`` on any lasso of this
    shape is periodic with period ``loop_len``.

    The bound is structural: future operators keep it, each Y/Z step adds one,
    a bounded past window adds its upper bound and an unbounded past operator
    adds one loop (its state is a monotone bit, so it settles after one lap).
    """
    memo: dict[int, int] = {}

    def go(g: Formula) -> int:
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            res = prefix_len
        elif isinstance(g, (LastAtom, TrueF, FalseF)):
            res = 0
        else:
            base = max(go(k) for k in g.children())
            if isinstance(g, (Y, Z)):
                res = base + 1
            elif isinstance(g, (O, H, S)):
                hi = g.interval.hi
                res = base + (loop_len if hi is None else hi)
            else:
                res = base
        memo[key] = res
        return res

    return go(f)


def eval_lasso(f: Formula, lasso: LassoTrace, t: int) -> bool:
    if t < 0:
        raise IndexError("negative position")
    p, l = len(lasso.prefix), len(lasso.loop)
    memo: dict[tuple[int, int], bool] = {}
    stable: dict[int, int] = {}

    def threshold(g: Formula) -> int:
        key = id(g)
        if key not in stable:
            stable[key] = stable_from(g, p, l)
        return stable[key]

    def ev(g: Formula, t: int) -> bool:
        b = threshold(g)
        if t >= b + l:
            t = b + (t - b) % l
        key = (id(g), t)
        if key in memo:
            return memo[key]
        res = _lasso_clause(g, t)
        memo[key] = res
        return res

    def _lasso_clause(g: Formula, t: int) -> bool:
        if isinstance(g, Atom):
            return g.name in lasso.state(t)
        if isinstance(g, LastAtom):
            return False
        if isinstance(g, TrueF):
            return True
        if isinstance(g, FalseF):
            return False
        res = _boolean_clause(g, t, ev)
        if res is not None:
            return res
        if isinstance(g, (Y, Z, O, H, S)):
            return _past_clause(g, t, ev)
        if isinstance(g, X):
            return ev(g.arg, t + 1)
        iv = g.interval
        if iv.hi is not None:
            window = [t + j for j in range(iv.lo, iv.hi + 1)]
        else:
            # past this horizon every child value repeats one already seen
            horizon = max(t, max(threshold(k) for k in g.children())) + l
            window = list(range(t, horizon))
        if isinstance(g, F):
            return any(ev(g.arg, t0) for t0 in window)
        if isinstance(g, G):
            return all(ev(g.arg, t0) for t0 in window)
        if isinstance(g, U):
            return any(ev(g.right, t0) and all(ev(g.left, t1) for t1 in range(t, t0)) for t0 in window)
        if isinstance(g, R):
            return _release(g, t, window, ev)
        raise TypeError(f"unknown node {g!r}")

    return ev(f, t)


def evaluate(f: Formula, trace: AnyTrace, t: int) -> bool:
    if isinstance(trace, LassoTrace):
        return eval_lasso(f, trace, t)
    return eval(f, trace, t)


def holds_at_all_positions(f: Formula, trace: AnyTrace) -> bool:
    """``holds_globally`` for finite traces; for lassos, every distinct position."""
    if isinstance(trace, Trace):
        return holds_globally(f, trace)
    p, l = len(trace.prefix), len(trace.loop)
    end = stable_from(f, p, l) + l
    return all(eval_lasso(f, trace, t) for t in range(end))


__all__ = [
    "Trace",
    "LassoTrace",
    "AnyTrace",
    "eval",
    "eval_lasso",
    "evaluate",
    "holds_globally",
    "holds_at_all_positions",
    "stable_from",
    "format_trace",
    "parse_trace",
    "parse_trace_text",
    "LOOP_MARK",
]

