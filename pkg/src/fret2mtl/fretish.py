"""FRETISH requirement sentences: parsing, rendering and template enumeration.

A sentence has the shape::

    [scope] [,] [condition] [,] [the] component shall [timing] satisfy response

Keywords are case-insensitive; identifiers are case-sensitive.  Boolean
expressions use ``& | ! -> <->`` (or ``and``/``or``/``not``) over identifiers.
A comparison such as ``horizontal_distance <= 250`` is read as one opaque
proposition named ``horizontal_distance_le_250``.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from . import mtl
from .mtl import Formula
from .text import KEYWORDS as FORMULA_KEYWORDS
from .text import FormulaSyntaxError, parse_formula, print_formula


class RequirementSyntaxError(ValueError):
    pass


class ScopeKind(enum.Enum):
    GLOBAL = "global"
    IN = "in"
    NOT_IN = "not in"
    ONLY_IN = "only in"
    BEFORE = "before"
    ONLY_BEFORE = "only before"
    AFTER = "after"
    ONLY_AFTER = "only after"

    @property
    def only(self) -> bool:
        return self in (ScopeKind.ONLY_IN, ScopeKind.ONLY_BEFORE, ScopeKind.ONLY_AFTER)


class ConditionKind(enum.Enum):
    NONE = "none"
    TRIGGER = "upon"
    CONTINUAL = "when"


class TimingKind(enum.Enum):
    IMMEDIATELY = "immediately"
    EVENTUALLY = "eventually"
    NEXT = "next"
    ALWAYS = "always"
    NEVER = "never"
    WITHIN = "within"
    FOR = "for"
    AFTER = "after"
    UNTIL = "until"
    BEFORE = "before"

    @property
    def bounded(self) -> bool:
        return self in (TimingKind.WITHIN, TimingKind.FOR, TimingKind.AFTER)

    @property
    def stop_based(self) -> bool:
        return self in (TimingKind.UNTIL, TimingKind.BEFORE)


@dataclass(frozen=True)
class Scope:
    kind: ScopeKind = ScopeKind.GLOBAL
    mode: Optional[str] = None

    def __post_init__(self) -> None:
        if (self.kind is ScopeKind.GLOBAL) != (self.mode is None):
            raise ValueError("a scope has a mode exactly when it is not global")


@dataclass(frozen=True)
class Condition:
    kind: ConditionKind = ConditionKind.NONE
    expr: Optional[Formula] = None

    def __post_init__(self) -> None:
        if (self.kind is ConditionKind.NONE) != (self.expr is None):
            raise ValueError("a condition has an expression exactly when it is not none")


@dataclass(frozen=True)
class Timing:
    kind: TimingKind = TimingKind.EVENTUALLY
    k: Optional[int] = None
    stop: Optional[Formula] = None

    def __post_init__(self) -> None:
        if self.kind.bounded:
            if self.k is None or self.k < 1:
                raise ValueError(f"timing {self.kind.value} needs a bound k >= 1")
        elif self.k is not None:
            raise ValueError(f"timing {self.kind.value} takes no bound")
        if self.kind.stop_based != (self.stop is not None):
            raise ValueError(f"timing {self.kind.value}: stop condition mismatch")


@dataclass(frozen=True)
class Requirement:
    scope: Scope
    condition: Condition
    component: str
    timing: Timing
    response: Formula

    def __post_init__(self) -> None:
        if not self.component:
            raise ValueError("empty component")


# ------------------------------------------------------------------ lexing

_COMPARISON = re.compile(
    r"(?P<lhs>[A-Za-z_][A-Za-z0-9_]*)\s*(?P<op><=|>=|==|!=|<|>|=)\s*(?P<rhs>-?\d+(?:\.\d+)?|[A-Za-z_][A-Za-z0-9_]*)"
)
_OP_NAMES = {"<=": "le", ">=": "ge", "==": "eq", "=": "eq", "!=": "ne", "<": "lt", ">": "gt"}
_WORD = re.compile(r"\s*(?:(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<sym><->|->|[()!&|,]))")

UNITS = frozenset(
    """tick ticks step steps unit units timeunit timeunits ms millisecond milliseconds
    second seconds sec secs s minute minutes min mins hour hours h day days""".split()
)
ARTICLES = frozenset({"the", "a", "an"})
RESERVED = frozenset(
    """in not only before after upon when while shall satisfy immediately eventually next
    at timepoint always never within for until and or the a an""".split()
)


def _atomize(m: re.Match) -> str:
    rhs = m.group("rhs").replace("-", "m").replace(".", "p")
    return f"{m.group('lhs')}_{_OP_NAMES[m.group('op')]}_{rhs}"


def _lex(text: str) -> list[str]:
    text = _COMPARISON.sub(_atomize, text.strip().rstrip("."))
    words = []
    pos = 0
    while pos < len(text):
        m = _WORD.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise RequirementSyntaxError(f"unexpected character {text[pos]!r}")
        words.append(m.group(m.lastgroup))
        pos = m.end()
    return words


def _is_kw(word: str, *kws: str) -> bool:
    return word.lower() in kws


def _expr(words: list[str], what: str) -> Formula:
    if not words:
        raise RequirementSyntaxError(f"empty {what}")
    out = []
    for w in words:
        lw = w.lower()
        if lw == "and":
            out.append("&")
        elif lw == "or":
            out.append("|")
        elif lw == "not":
            out.append("!")
        else:
            out.append(w)
    try:
        f = parse_formula(" ".join(out))
    except FormulaSyntaxError as exc:
        raise RequirementSyntaxError(f"bad {what}: {exc}") from None
    if any(isinstance(n, mtl.TEMPORAL_OPS) or isinstance(n, mtl.LastAtom) for n in mtl.walk(f)):
        raise RequirementSyntaxError(f"{what} must be a boolean expression")
    return f


_SCOPE_PHRASES = [
    (("not", "in"), ScopeKind.NOT_IN),
    (("only", "in"), ScopeKind.ONLY_IN),
    (("only", "before"), ScopeKind.ONLY_BEFORE),
    (("only", "after"), ScopeKind.ONLY_AFTER),
    (("in",), ScopeKind.IN),
    (("before",), ScopeKind.BEFORE),
    (("after",), ScopeKind.AFTER),
]


def _identifier(word: str, what: str) -> str:
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", word) or word.lower() in RESERVED or word in FORMULA_KEYWORDS:
        raise RequirementSyntaxError(f"expected {what}, found {word!r}")
    return word


def parse_requirement(text: str) -> Requirement:
    words = _lex(text)
    lower = [w.lower() for w in words]
    if "shall" not in lower:
        raise RequirementSyntaxError("missing 'shall'")
    shall = lower.index("shall")
    head, tail = words[:shall], words[shall + 1 :]

    # component: the word just before 'shall', optionally preceded by an article
    if not head:
        raise RequirementSyntaxError("missing component")
    component = _identifier(head[-1], "component")
    head = head[:-1]
    if head and head[-1].lower() in ARTICLES:
        head = head[:-1]
    while head and head[-1] == ",":
        head = head[:-1]

    scope = Scope()
    for phrase, kind in _SCOPE_PHRASES:
        if tuple(w.lower() for w in head[: len(phrase)]) == phrase:
            if len(head) <= len(phrase):
                raise RequirementSyntaxError(f"scope '{' '.join(phrase)}' without a mode")
            scope = Scope(kind, _identifier(head[len(phrase)], "scope mode"))
            head = head[len(phrase) + 1 :]
            break
    while head and head[0] == ",":
        head = head[1:]

    condition = Condition()
    if head:
        kw = head[0].lower()
        if kw == "upon":
            condition = Condition(ConditionKind.TRIGGER, _expr(head[1:], "condition"))
        elif kw in ("when", "while"):
            condition = Condition(ConditionKind.CONTINUAL, _expr(head[1:], "condition"))
        else:
            raise RequirementSyntaxError(f"unexpected {head[0]!r} before component")

    lower_tail = [w.lower() for w in tail]
    if "satisfy" not in lower_tail:
        raise RequirementSyntaxError("missing 'satisfy'")
    sat = lower_tail.index("satisfy")
    timing = _timing(tail[:sat])
    response = _expr(tail[sat + 1 :], "response")
    return Requirement(scope, condition, component, timing, response)


_SIMPLE_TIMINGS = {
    ("immediately",): TimingKind.IMMEDIATELY,
    ("eventually",): TimingKind.EVENTUALLY,
    ("next",): TimingKind.NEXT,
    ("at", "the", "next", "timepoint"): TimingKind.NEXT,
    ("always",): TimingKind.ALWAYS,
    ("never",): TimingKind.NEVER,
}


def _timing(words: list[str]) -> Timing:
    if not words:
        return Timing()
    lower = tuple(w.lower() for w in words)
    if lower in _SIMPLE_TIMINGS:
        return Timing(_SIMPLE_TIMINGS[lower])
    head = lower[0]
    if head in ("within", "for", "after"):
        if len(words) < 2 or not words[1].isdigit():
            raise RequirementSyntaxError(f"'{head}' needs a number")
        k = int(words[1])
        if k == 0:
            raise RequirementSyntaxError("bounded timing needs n >= 1")
        rest = lower[2:]
        if len(rest) > 1 or (rest and rest[0] not in UNITS):
            raise RequirementSyntaxError(f"unknown time unit {' '.join(words[2:])!r}")
        return Timing(TimingKind(head), k=k)
    if head in ("until", "before"):
        return Timing(TimingKind(head), stop=_expr(words[1:], "stop condition"))
    raise RequirementSyntaxError(f"unknown timing {' '.join(words)!r}")


def parse_requirements(text: str) -> list[Requirement]:
    """One sentence per line; blank lines and ``#`` comments are skipped."""
    return [
        parse_requirement(line)
        for line in (raw.strip() for raw in text.splitlines())
        if line and not line.startswith("#")
    ]


# --------------------------------------------------------------- rendering


def _render_timing(t: Timing) -> str:
    if t.kind is TimingKind.NEXT:
        return "at the next timepoint"
    if t.kind.bounded:
        return f"{t.kind.value} {t.k} {'tick' if t.k == 1 else 'ticks'}"
    if t.kind.stop_based:
        assert t.stop is not None
        return f"{t.kind.value} {print_formula(t.stop)}"
    return t.kind.value


def render_requirement(r: Requirement) -> str:
    parts = []
    if r.scope.kind is not ScopeKind.GLOBAL:
        parts.append(f"{r.scope.kind.value} {r.scope.mode}")
    if r.condition.kind is not ConditionKind.NONE:
        assert r.condition.expr is not None
        parts.append(f"{r.condition.kind.value} {print_formula(r.condition.expr)}")
    parts += [r.component, "shall", _render_timing(r.timing), "satisfy", print_formula(r.response)]
    return " ".join(parts)


# ------------------------------------------------------------ enumeration

SCOPE_ORDER = list(ScopeKind)
CONDITION_ORDER = [ConditionKind.NONE, ConditionKind.TRIGGER, ConditionKind.CONTINUAL]
TIMING_ORDER = list(TimingKind)


def template(
    scope: ScopeKind,
    condition: ConditionKind,
    timing: TimingKind,
    k: int = 3,
    stop_name: str = "StopCondition",
    component: str = "MyComponent",
) -> Requirement:
    sc = Scope() if scope is ScopeKind.GLOBAL else Scope(scope, "Scope")
    cond = Condition() if condition is ConditionKind.NONE else Condition(condition, mtl.Atom("Condition"))
    if timing.bounded:
        tm = Timing(timing, k=k)
    elif timing.stop_based:
        tm = Timing(timing, stop=mtl.Atom(stop_name))
    else:
        tm = Timing(timing)
    return Requirement(sc, cond, component, tm, mtl.Atom("Response"))


def enumerate_templates(k: int = 3, stop_name: str = "StopCondition") -> list[Requirement]:
    """All 8 x 3 x 10 scope/condition/timing combinations, scope-major."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return [
        template(s, c, t, k, stop_name)
        for s, c, t in itertools.product(SCOPE_ORDER, CONDITION_ORDER, TIMING_ORDER)
    ]


def template_key(r: Requirement) -> str:
    """Short slug such as ``only_in-upon-before``."""
    return "-".join(
        (r.scope.kind.value.replace(" ", "_"), r.condition.kind.value, r.timing.kind.value)
    )


def describe_templates(reqs: Iterable[Requirement]) -> list[str]:
    return [template_key(r) for r in reqs]
