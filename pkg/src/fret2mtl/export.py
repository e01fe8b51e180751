"""Encoding of finite-trace formulas into infinite-trace ones.

A finite trace ``s0 .. s(n-1)`` is represented as the lasso whose prefix is
the trace with a fresh proposition ``LAST`` added at ``n-1`` and whose loop is
the single state ``{LAST}``.  ``LAST`` marks the end and stays true
afterwards; positions that belong to the original trace are exactly those
where ``LAST`` has not yet held before (``alive``).
"""
from __future__ import annotations

from .mtl import (
    And,
    Atom,
    F,
    Formula,
    G,
    Implies,
    LastAtom,
    Not,
    UNBOUNDED,
    R,
    U,
    X,
    Y,
    rebuild,
)
from .traces import LassoTrace, Trace

LAST_MARKER = "LAST"


def alive(marker: str = LAST_MARKER) -> Formula:
    return Not(Y(Atom(marker)))


def export_last(f: Formula, marker: str = LAST_MARKER) -> Formula:
    """Translate ``f`` so that on the embedded lasso it holds exactly where
    ``f`` holds on the finite trace (at every original position)."""
    last = Atom(marker)
    live = alive(marker)
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, LastAtom):
            res: Formula = And(last, live)
        elif isinstance(g, X):
            res = And(Not(last), X(go(g.arg)))
        elif isinstance(g, F):
            res = F(g.interval, And(go(g.arg), live))
        elif isinstance(g, G):
            res = G(g.interval, Implies(live, go(g.arg)))
        elif isinstance(g, U):
            res = U(g.interval, go(g.left), And(go(g.right), live))
        elif isinstance(g, R):
            res = R(g.interval, And(go(g.left), live), Implies(live, go(g.right)))
        else:
            res = rebuild(g, tuple(go(k) for k in g.children()))
        memo[key] = res
        return res

    return go(f)


def wrap_export(f: Formula, marker: str = LAST_MARKER) -> Formula:
    """``(G (LAST -> X LAST) & F LAST) -> export(f)``: valid on all lassos iff
    ``f`` holds initially on every finite trace."""
    last = Atom(marker)
    assumption = And(G(UNBOUNDED, Implies(last, X(last))), F(UNBOUNDED, last))
    return Implies(assumption, export_last(f, marker))


def embed(trace: Trace, marker: str = LAST_MARKER) -> LassoTrace:
    states = list(trace.states)
    states[-1] = states[-1] | {marker}
    return LassoTrace(states, [frozenset({marker})])
