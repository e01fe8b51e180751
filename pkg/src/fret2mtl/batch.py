"""Vectorised evaluation over many traces of one shape at once.

A formula is first compiled into a :class:`Program`: its subformulas with
structurally equal subtrees shared, in bottom-up order.  Executing a program
on a batch yields, for every trace in the batch, the truth value of each
subformula at every position.

Finite batches hold ``N`` traces of length ``n`` as ``(N, n)`` boolean
arrays.  Lasso batches hold ``N`` lassos with the same prefix length ``p`` and
loop length ``l``; a value sequence is stored as a :class:`Periodic`, i.e. the
first ``start + l`` positions, after which it repeats with period ``l``.
Every subformula has period ``l``; only the point where periodicity starts
grows (through past operators).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

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


@dataclass(frozen=True)
class Instr:
    node: Formula
    args: tuple[int, ...]


class Program:
    """Subformula DAG of one or more formulas, children before parents."""

    def __init__(self, roots: Sequence[Formula]) -> None:
        self.instrs: list[Instr] = []
        index: dict[object, int] = {}
        by_id: dict[int, int] = {}

        def visit(f: Formula) -> int:
            if id(f) in by_id:
                return by_id[id(f)]
            args = tuple(visit(k) for k in f.children())
            key = (type(f), getattr(f, "interval", None), getattr(f, "name", None), args)
            if key not in index:
                index[key] = len(self.instrs)
                self.instrs.append(Instr(f, args))
            by_id[id(f)] = index[key]
            return index[key]

        self.roots = [visit(f) for f in roots]


def _shift(a: np.ndarray, k: int, fill: bool) -> np.ndarray:
    """Column ``i`` of the result is column ``i + k`` of ``a`` (``fill`` outside)."""
    out = np.full_like(a, fill)
    n = a.shape[1]
    if k >= 0:
        if k < n:
            out[:, : n - k] = a[:, k:]
    elif -k < n:
        out[:, -k:] = a[:, : n + k]
    return out


def run_finite(prog: Program, columns: dict[str, np.ndarray], n: int, size: int) -> list[np.ndarray]:
    """Evaluate on ``size`` finite traces of length ``n``; returns one ``(size, n)`` array per root."""
    vals: list[np.ndarray] = []
    for ins in prog.instrs:
        a = [vals[i] for i in ins.args]
        vals.append(_finite_step(ins.node, a, columns, n, size))
    return [vals[i] for i in prog.roots]


def _finite_step(g: Formula, a: list[np.ndarray], columns, n: int, size: int) -> np.ndarray:
    if isinstance(g, Atom):
        col = columns.get(g.name)
        return np.zeros((size, n), bool) if col is None else col
    if isinstance(g, LastAtom):
        out = np.zeros((size, n), bool)
        out[:, n - 1] = True
        return out
    if isinstance(g, TrueF):
        return np.ones((size, n), bool)
    if isinstance(g, FalseF):
        return np.zeros((size, n), bool)
    res = _bool_step(g, a)
    if res is not None:
        return res
    if isinstance(g, X):
        return _shift(a[0], 1, False)
    if isinstance(g, Y):
        return _shift(a[0], -1, False)
    if isinstance(g, Z):
        return _shift(a[0], -1, True)
    iv = g.interval
    if iv.hi is None:
        return _finite_unbounded(g, a, n)
    span = range(iv.lo, iv.hi + 1)
    if isinstance(g, F):
        return _any([_shift(a[0], j, False) for j in span])
    if isinstance(g, G):
        return _all([_shift(a[0], j, True) for j in span])
    if isinstance(g, O):
        return _any([_shift(a[0], -j, False) for j in span])
    if isinstance(g, H):
        return _all([_shift(a[0], -j, True) for j in span])
    if isinstance(g, U):
        return _bounded_since_until(a[0], a[1], span, +1, lambda x, k: _shift(x, k, False))
    if isinstance(g, S):
        return _bounded_since_until(a[0], a[1], span, -1, lambda x, k: _shift(x, k, False))
    if isinstance(g, R):
        return _bounded_release(a[0], a[1], span, lambda x, k, fill: _shift(x, k, fill))
    raise TypeError(f"unknown node {g!r}")


def _bool_step(g: Formula, a: list[np.ndarray]) -> np.ndarray | None:
    if isinstance(g, Not):
        return ~a[0]
    if isinstance(g, And):
        return a[0] & a[1]
    if isinstance(g, Or):
        return a[0] | a[1]
    if isinstance(g, Implies):
        return ~a[0] | a[1]
    if isinstance(g, Iff):
        return a[0] == a[1]
    return None


def _any(xs: list[np.ndarray]) -> np.ndarray:
    out = xs[0].copy()
    for x in xs[1:]:
        out |= x
    return out


def _all(xs: list[np.ndarray]) -> np.ndarray:
    out = xs[0].copy()
    for x in xs[1:]:
        out &= x
    return out


def _bounded_since_until(left, right, span, direction, shift) -> np.ndarray:
    # right at offset j, left at offsets 0..j-1 (towards the future or the past)
    out = np.zeros_like(right)
    guard = np.ones_like(left)
    for j in range(span.stop):
        if j in span:
            out |= guard & shift(right, direction * j)
        guard = guard & shift(left, direction * j)
    return out


def _bounded_release(left, right, span, shift) -> np.ndarray:
    always = _all([shift(right, j, True) for j in span])
    released = np.zeros_like(always)
    guard = np.ones_like(always)
    for j in span:
        guard = guard & shift(right, j, False)
        released |= guard & shift(left, j, False)
    return always | released


def _finite_unbounded(g: Formula, a: list[np.ndarray], n: int) -> np.ndarray:
    if isinstance(g, O):
        return np.logical_or.accumulate(a[0], axis=1)
    if isinstance(g, H):
        return np.logical_and.accumulate(a[0], axis=1)
    if isinstance(g, F):
        return np.logical_or.accumulate(a[0][:, ::-1], axis=1)[:, ::-1]
    if isinstance(g, G):
        return np.logical_and.accumulate(a[0][:, ::-1], axis=1)[:, ::-1]
    out = np.empty_like(a[0])
    left, right = a
    if isinstance(g, S):
        out[:, 0] = right[:, 0]
        for i in range(1, n):
            out[:, i] = right[:, i] | (left[:, i] & out[:, i - 1])
        return out
    if isinstance(g, U):
        out[:, n - 1] = right[:, n - 1]
        for i in range(n - 2, -1, -1):
            out[:, i] = right[:, i] | (left[:, i] & out[:, i + 1])
        return out
    if isinstance(g, R):
        out[:, n - 1] = right[:, n - 1]
        for i in range(n - 2, -1, -1):
            out[:, i] = right[:, i] & (left[:, i] | out[:, i + 1])
        return out
    raise TypeError(f"unknown node {g!r}")


# ------------------------------------------------------------------- lassos


@dataclass
class Periodic:
    """Values at positions ``0 .. start + period - 1``; column ``i >= start``
    repeats at ``i + period``."""

    values: np.ndarray
    start: int
    period: int

    def col(self, i: int) -> np.ndarray:
        if i >= self.start:
            i = self.start + (i - self.start) % self.period
        return self.values[:, i]

    def window(self, offset: int, length: int) -> np.ndarray:
        """Columns ``offset .. offset + length - 1`` as a new array."""
        return np.stack([self.col(offset + i) for i in range(length)], axis=1)


def _periodic(columns: list[np.ndarray], start: int, period: int) -> Periodic:
    return Periodic(np.stack(columns, axis=1), start, period)


def run_lasso(prog: Program, columns: dict[str, np.ndarray], p: int, l: int, size: int) -> list[Periodic]:
    """Evaluate on ``size`` lassos with prefix ``p`` and loop ``l``.

    ``columns[name]`` has shape ``(size, p + l)``.
    """
    vals: list[Periodic] = []
    for ins in prog.instrs:
        a = [vals[i] for i in ins.args]
        vals.append(_lasso_step(ins.node, a, columns, p, l, size))
    return [vals[i] for i in prog.roots]


def _lasso_step(g: Formula, a: list[Periodic], columns, p: int, l: int, size: int) -> Periodic:
    if isinstance(g, Atom):
        col = columns.get(g.name)
        if col is None:
            col = np.zeros((size, p + l), bool)
        return Periodic(col, p, l)
    if isinstance(g, (LastAtom, FalseF)):
        return Periodic(np.zeros((size, l), bool), 0, l)
    if isinstance(g, TrueF):
        return Periodic(np.ones((size, l), bool), 0, l)
    start = max(x.start for x in a)
    width = start + l
    if isinstance(g, (Not, And, Or, Implies, Iff)):
        return Periodic(_bool_step(g, [x.window(0, width) for x in a]), start, l)
    if isinstance(g, X):
        return Periodic(a[0].window(1, width), start, l)
    if isinstance(g, (Y, Z)):
        fill = np.full(size, isinstance(g, Z))
        return _periodic([fill] + [a[0].col(i) for i in range(width)], start + 1, l)
    iv = g.interval
    if isinstance(g, (O, H, S)):
        return _lasso_past(g, a, start, l, size)
    if iv.hi is None:
        return _lasso_unbounded_future(g, a, start, l)
    span = range(iv.lo, iv.hi + 1)
    ext = width + iv.hi
    w = [x.window(0, ext) for x in a]

    def shift(x: np.ndarray, k: int, fill: bool = False) -> np.ndarray:
        return x[:, k : k + width]

    if isinstance(g, F):
        return Periodic(_any([shift(w[0], j) for j in span]), start, l)
    if isinstance(g, G):
        return Periodic(_all([shift(w[0], j) for j in span]), start, l)
    if isinstance(g, U):
        return Periodic(_future_bounded_until(w[0], w[1], span, width), start, l)
    if isinstance(g, R):
        return Periodic(_bounded_release(w[0], w[1], span, shift), start, l)
    raise TypeError(f"unknown node {g!r}")


def _future_bounded_until(left: np.ndarray, right: np.ndarray, span: range, width: int) -> np.ndarray:
    out = np.zeros((left.shape[0], width), bool)
    guard = np.ones((left.shape[0], width), bool)
    for j in range(span.stop):
        if j in span:
            out |= guard & right[:, j : j + width]
        guard = guard & left[:, j : j + width]
    return out


def _lasso_unbounded_future(g: Formula, a: list[Periodic], start: int, l: int) -> Periodic:
    width = start + l
    ws = [x.window(0, width) for x in a]
    if isinstance(g, F):
        left, right, least = np.ones_like(ws[0]), ws[0], True
    elif isinstance(g, G):
        left, right, least = np.zeros_like(ws[0]), ws[0], False
    else:
        left, right = ws
        least = isinstance(g, U)

    def step(i: int, nxt: np.ndarray) -> np.ndarray:
        if least:
            return right[:, i] | (left[:, i] & nxt)
        return right[:, i] & (left[:, i] | nxt)

    out = np.empty_like(right)
    # fixpoint on the loop: two backward laps reach every position
    cur = np.full(right.shape[0], not least)
    for _ in range(2):
        for i in range(width - 1, start - 1, -1):
            cur = step(i, cur)
            out[:, i] = cur
        cur = out[:, start]
    for i in range(start - 1, -1, -1):
        out[:, i] = step(i, out[:, i + 1])
    return Periodic(out, start, l)


def _lasso_past(g: Formula, a: list[Periodic], start: int, l: int, size: int) -> Periodic:
    iv = g.interval
    grow = l if iv.hi is None else iv.hi
    new_start = start + grow
    width = new_start + l
    ws = [x.window(0, width) for x in a]
    if iv.hi is None:
        out = np.empty((size, width), bool)
        if isinstance(g, O):
            return Periodic(np.logical_or.accumulate(ws[0], axis=1), new_start, l)
        if isinstance(g, H):
            return Periodic(np.logical_and.accumulate(ws[0], axis=1), new_start, l)
        left, right = ws
        out[:, 0] = right[:, 0]
        for i in range(1, width):
            out[:, i] = right[:, i] | (left[:, i] & out[:, i - 1])
        return Periodic(out, new_start, l)
    span = range(iv.lo, iv.hi + 1)
    if isinstance(g, O):
        return Periodic(_any([_shift(ws[0], -j, False) for j in span]), new_start, l)
    if isinstance(g, H):
        return Periodic(_all([_shift(ws[0], -j, True) for j in span]), new_start, l)
    return Periodic(
        _bounded_since_until(ws[0], ws[1], span, -1, lambda x, k: _shift(x, k, False)), new_start, l
    )
