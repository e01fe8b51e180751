"""Abstract syntax for mixed past/future metric temporal logic.

Formulas are immutable trees of frozen dataclasses, so structurally equal
formulas compare and hash equal.  Every temporal operator except ``Y``,
``Z`` and ``X`` carries an :class:`Interval`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union


@dataclass(frozen=True)
class Interval:
    """A discrete interval ``[lo, hi]``; ``hi is None`` means ``[0, inf)``."""

    lo: int = 0
    hi: Optional[int] = None

    def __post_init__(self) -> None:
        if self.hi is None:
            if self.lo != 0:
                raise ValueError("unbounded intervals must start at 0")
        elif not 0 <= self.lo <= self.hi:
            raise ValueError(f"bad interval [{self.lo},{self.hi}]")

    @property
    def bounded(self) -> bool:
        return self.hi is not None

    def __contains__(self, c: int) -> bool:
        if self.hi is None:
            return c >= 0
        return self.lo <= c <= self.hi

    def __str__(self) -> str:
        return "" if self.hi is None else f"[{self.lo},{self.hi}]"


UNBOUNDED = Interval()


def bounded(lo: int, hi: int) -> Interval:
    return Interval(lo, hi)


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        from .text import print_formula

        return print_formula(self)

    def children(self) -> tuple[Formula, ...]:
        return ()


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class LastAtom(Formula):
    """Holds exactly at the final position of a finite trace."""

    def __repr__(self) -> str:
        return "LAST"


@dataclass(frozen=True, repr=False)
class TrueF(Formula):
    def __repr__(self) -> str:
        return "TRUE"


@dataclass(frozen=True, repr=False)
class FalseF(Formula):
    def __repr__(self) -> str:
        return "FALSE"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.arg,)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


class Iff(_Binary):
    pass


@dataclass(frozen=True)
class _Step(Formula):
    arg: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.arg,)


class Y(_Step):
    """Strong previous: false at position 0."""


class Z(_Step):
    """Weak previous: true at position 0."""


class X(_Step):
    """Strong next: false at the last position of a finite trace."""


@dataclass(frozen=True)
class _UnaryTemporal(Formula):
    interval: Interval
    arg: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.arg,)


class O(_UnaryTemporal):  # noqa: E742
    pass


class H(_UnaryTemporal):
    pass


class F(_UnaryTemporal):
    pass


class G(_UnaryTemporal):
    pass


@dataclass(frozen=True)
class _BinaryTemporal(Formula):
    interval: Interval
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


class S(_BinaryTemporal):
    pass


class U(_BinaryTemporal):
    pass


class R(_BinaryTemporal):
    pass


TRUE = TrueF()
FALSE = FalseF()
LAST = LastAtom()

PAST_OPS = (Y, Z, O, H, S)
FUTURE_OPS = (X, F, G, U, R)
TEMPORAL_OPS = PAST_OPS + FUTURE_OPS
BINARY_BOOL = (And, Or, Implies, Iff)

Leaf = Union[Atom, LastAtom, TrueF, FalseF]


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal; iterative so deep X-chains do not hit the recursion limit."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(n.name for n in walk(f) if isinstance(n, Atom))


def conj(*fs: Formula) -> Formula:
    """Left-associated conjunction of one or more formulas."""
    out = fs[0]
    for g in fs[1:]:
        out = And(out, g)
    return out


def disj(*fs: Formula) -> Formula:
    out = fs[0]
    for g in fs[1:]:
        out = Or(out, g)
    return out


def x_power(f: Formula, k: int) -> Formula:
    for _ in range(k):
        f = X(f)
    return f


def rebuild(f: Formula, kids: tuple[Formula, ...]) -> Formula:
    """Return a copy of ``f`` with its children replaced."""
    if isinstance(f, (_BinaryTemporal,)):
        return type(f)(f.interval, kids[0], kids[1])
    if isinstance(f, _UnaryTemporal):
        return type(f)(f.interval, kids[0])
    if isinstance(f, _Binary):
        return type(f)(kids[0], kids[1])
    if isinstance(f, (Not, _Step)):
        return type(f)(kids[0])
    return f


def rename(f: Formula, mapping: dict[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(mapping.get(f.name, f.name))
    kids = f.children()
    if not kids:
        return f
    return rebuild(f, tuple(rename(k, mapping) for k in kids))


@dataclass(frozen=True)
class MetricsReport:
    size: int
    temp_ops: int
    props: int
    temporal_depth: int

    def as_dict(self) -> dict[str, int]:
        return {
            "size": self.size,
            "temp_ops": self.temp_ops,
            "props": self.props,
            "temporal_depth": self.temporal_depth,
        }


def metrics(f: Formula) -> MetricsReport:
    """Structural metrics of ``f`` as printed (no desugaring).

    ``size`` counts every node, ``LAST`` and constants included.  ``props``
    counts occurrences of user atoms only; ``LAST`` is a trace marker, not a
    requirement variable.
    """
    size = temp_ops = props = 0
    depth = 0
    stack = [(f, 0)]
    while stack:
        node, d = stack.pop()
        size += 1
        if isinstance(node, TEMPORAL_OPS):
            temp_ops += 1
            d += 1
        elif isinstance(node, Atom):
            props += 1
        depth = max(depth, d)
        stack.extend((k, d) for k in node.children())
    return MetricsReport(size, temp_ops, props, depth)


def temporal_depth(f: Formula) -> int:
    return metrics(f).temporal_depth
