"""Bounded equivalence and implication checking by exhaustive trace enumeration.

For the finite semantics every trace of length ``1..max_len`` over the given
propositions is checked.  For infinite traces every lasso ``prefix . loop^w``
with ``|prefix| <= max_prefix`` and ``1 <= |loop| <= max_loop`` is checked.

By default two formulas are compared at position 0 of each trace, which is
how a model checker reads a top-level specification.  With
``positions="all"`` every position is compared; on a lasso the truth values
are ultimately periodic, so the finite representation covers every position
of the infinite word.  Formulas mixing past operators with pure-future ones
usually differ at later positions even when they agree initially.

Traces are enumerated in a fixed order: shorter first, then lexicographically
by state, where a state is read as a binary number with the first
proposition as its most significant bit.  The first disagreement in that
order is reported, whatever the number of workers.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .batch import Program, run_finite, run_lasso
from .mtl import Formula, atoms
from .traces import AnyTrace, LassoTrace, Trace, evaluate, format_trace
from .translator import Semantics

DEFAULT_MAX_TRACE_BITS = 24
CHUNK = 1 << 16
POSITIONS = ("initial", "all")


class TraceSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CheckConfig:
    semantics: Semantics
    props: tuple[str, ...]
    max_len: int = 6
    max_prefix: int = 4
    max_loop: int = 2
    workers: int = 1
    max_trace_bits: Optional[int] = None
    positions: str = "initial"

    def __post_init__(self) -> None:
        object.__setattr__(self, "props", tuple(self.props))
        if not self.props:
            raise ValueError("props must be nonempty")
        if len(set(self.props)) != len(self.props):
            raise ValueError("duplicate propositions")
        if self.max_len < 1 or self.max_loop < 1 or self.max_prefix < 0:
            raise ValueError("bounds must satisfy max_len >= 1, max_loop >= 1, max_prefix >= 0")
        if self.positions not in POSITIONS:
            raise ValueError(f"positions must be one of {POSITIONS}")

    @property
    def trace_bits(self) -> int:
        if self.semantics is Semantics.FUTURE_INFINITE:
            return len(self.props) * (self.max_prefix + self.max_loop)
        return len(self.props) * self.max_len

    def bit_limit(self) -> int:
        if self.max_trace_bits is not None:
            return self.max_trace_bits
        return int(os.environ.get("FRET2MTL_MAX_TRACE_BITS", DEFAULT_MAX_TRACE_BITS))

    def describe(self) -> str:
        where = "every position" if self.positions == "all" else "position 0"
        if self.semantics is Semantics.FUTURE_INFINITE:
            return f"lassos with prefix <= {self.max_prefix}, loop <= {self.max_loop}, at {where}"
        return f"finite traces of length <= {self.max_len}, at {where}"


@dataclass(frozen=True)
class Equivalent:
    bounds: str = ""

    label = "Equivalent up to bounds"

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Valid:
    bounds: str = ""

    label = "Valid up to bounds"

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Counterexample:
    trace: AnyTrace
    t: int
    left_value: bool = field(default=False)
    right_value: bool = field(default=False)

    label = "Counterexample"

    def __bool__(self) -> bool:
        return False

    def serialize(self) -> str:
        return format_trace(self.trace, self.t)


Verdict = Union[Equivalent, Valid, Counterexample]


def _decode(codes: np.ndarray, positions: int, k: int) -> np.ndarray:
    """``(N, positions, k)`` booleans; position 0 and proposition 0 are most significant."""
    shifts = np.arange(positions * k - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts[None, :]) & 1).astype(bool).reshape(len(codes), positions, k)


def _states(bits: np.ndarray, props: Sequence[str]) -> list[frozenset[str]]:
    return [frozenset(p for p, b in zip(props, row) if b) for row in bits]


def _chunks(total: int) -> Iterator[tuple[int, int]]:
    for lo in range(0, total, CHUNK):
        yield lo, min(total, lo + CHUNK)


def _lasso_shapes(cfg: CheckConfig) -> list[tuple[int, int]]:
    shapes = [(p, l) for p in range(cfg.max_prefix + 1) for l in range(1, cfg.max_loop + 1)]
    return sorted(shapes, key=lambda s: (s[0] + s[1], s[0]))


def _mismatch(a: np.ndarray, b: np.ndarray, implication: bool) -> np.ndarray:
    return (a & ~b) if implication else (a != b)


def _scan(f: Formula, g: Formula, cfg: CheckConfig, implication: bool) -> Optional[Counterexample]:
    unknown = (atoms(f) | atoms(g)) - set(cfg.props)
    if unknown:
        raise ValueError(f"formulas mention propositions not in the config: {sorted(unknown)}")
    if cfg.trace_bits > cfg.bit_limit():
        raise TraceSpaceTooLarge(
            f"{cfg.trace_bits} bits of trace space exceeds the limit of {cfg.bit_limit()} "
            "(set FRET2MTL_MAX_TRACE_BITS to raise it)"
        )
    prog = Program([f, g])
    k = len(cfg.props)
    infinite = cfg.semantics is Semantics.FUTURE_INFINITE
    every_position = cfg.positions == "all"
    shapes = _lasso_shapes(cfg) if infinite else [(n, 0) for n in range(1, cfg.max_len + 1)]

    def work(shape: tuple[int, int], lo: int, hi: int) -> Optional[tuple[int, int]]:
        p, l = shape
        width = p + l
        bits = _decode(np.arange(lo, hi, dtype=np.int64), width, k)
        cols = {name: bits[:, :, j] for j, name in enumerate(cfg.props)}
        if infinite:
            a, b = run_lasso(prog, cols, p, l, hi - lo)
            start = max(a.start, b.start)
            bad = _mismatch(a.window(0, start + l), b.window(0, start + l), implication)
        else:
            a, b = run_finite(prog, cols, p, hi - lo)
            bad = _mismatch(a, b, implication)
        if not every_position:
            bad = bad[:, :1]
        rows = np.flatnonzero(bad.any(axis=1))
        if len(rows) == 0:
            return None
        row = int(rows[0])
        return lo + row, int(np.argmax(bad[row]))

    def tasks():
        for shape in shapes:
            total = 1 << (k * (shape[0] + shape[1]))
            for lo, hi in _chunks(total):
                yield shape, lo, hi

    def found(shape, hit) -> Counterexample:
        p, l = shape
        code, t = hit
        bits = _decode(np.array([code], dtype=np.int64), p + l, k)[0]
        states = _states(bits, cfg.props)
        trace: AnyTrace = LassoTrace(states[:p], states[p:]) if infinite else Trace(states)
        return Counterexample(trace, t, evaluate(f, trace, t), evaluate(g, trace, t))

    if cfg.workers <= 1:
        for shape, lo, hi in tasks():
            hit = work(shape, lo, hi)
            if hit is not None:
                return found(shape, hit)
        return None

    with ThreadPoolExecutor(cfg.workers) as pool:
        pending = []
        for task in tasks():
            pending.append((task[0], pool.submit(work, *task)))
            # results are consumed in submission order, so the first hit is canonical
            while len(pending) > 2 * cfg.workers or (pending and pending[0][1].done()):
                shape, fut = pending.pop(0)
                hit = fut.result()
                if hit is not None:
                    for _, rest in pending:
                        rest.cancel()
                    return found(shape, hit)
        for shape, fut in pending:
            hit = fut.result()
            if hit is not None:
                return found(shape, hit)
    return None


def check_equiv(f: Formula, g: Formula, cfg: CheckConfig) -> Verdict:
    cex = _scan(f, g, cfg, implication=False)
    return Equivalent(cfg.describe()) if cex is None else cex


def check_implication(f: Formula, g: Formula, cfg: CheckConfig) -> Verdict:
    """Does ``f`` imply ``g`` at every position of every bounded trace?"""
    cex = _scan(f, g, cfg, implication=True)
    return Valid(cfg.describe()) if cex is None else cex


def replay(f: Formula, g: Formula, cex: Counterexample) -> tuple[bool, bool]:
    """Re-evaluate both formulas at the counterexample with the reference evaluator."""
    return evaluate(f, cex.trace, cex.t), evaluate(g, cex.trace, cex.t)
