"""Compositional translation of FRETISH requirements into MTL.

Every translation has the same shape: a lifting (``H``, ``G`` or
``LAST V _``) around one implication whose antecedent says when the
requirement is triggered and whose consequent is the timed response.
"""
from __future__ import annotations

import enum

from . import mtl
from .fretish import ConditionKind, Requirement, Scope, ScopeKind, Timing, TimingKind
from .mtl import (
    LAST,
    TRUE,
    UNBOUNDED,
    And,
    Atom,
    F,
    Formula,
    G,
    H,
    Implies,
    Interval,
    Not,
    O,
    Or,
    R,
    U,
    X,
    Y,
    Z,
)


class Semantics(enum.Enum):
    PAST = "past"
    FUTURE_FINITE = "fin"
    FUTURE_INFINITE = "inf"


def mtl_of_scope(s: Scope) -> Formula:
    if s.kind is ScopeKind.GLOBAL:
        return TRUE
    m = Atom(s.mode)  # type: ignore[arg-type]
    if s.kind is ScopeKind.IN:
        return m
    if s.kind in (ScopeKind.NOT_IN, ScopeKind.ONLY_IN):
        return Not(m)
    if s.kind is ScopeKind.BEFORE:
        return H(UNBOUNDED, Not(m))
    if s.kind is ScopeKind.ONLY_BEFORE:
        return O(UNBOUNDED, m)
    if s.kind is ScopeKind.AFTER:
        return O(UNBOUNDED, And(Not(m), Y(m)))
    return H(UNBOUNDED, Implies(Y(m), m))


def triggers(s: Scope, c) -> Formula:
    """Continual conditions hold pointwise; triggers and the absent condition
    fire on a rising edge of ``scope & cond``.  No simplification is done."""
    cond = TRUE if c.kind is ConditionKind.NONE else c.expr
    active = And(mtl_of_scope(s), cond)
    if c.kind is ConditionKind.CONTINUAL:
        return active
    return And(active, Z(Not(And(mtl_of_scope(s), cond))))


def exit_scope(phi: Formula, sigma: Semantics) -> Formula:
    leaving = And(phi, X(Not(phi)))
    if sigma is Semantics.FUTURE_INFINITE:
        return leaving
    return Or(leaving, LAST)


def until_in_scope(p: Formula, q: Formula, phi: Formula) -> Formula:
    """``p U_phi q``: ``q`` must be reached while the scope still holds."""
    return U(UNBOUNDED, p, And(q, phi))


def _iv(lo: int, hi: int) -> Interval:
    return Interval(lo, hi)


def timed_response(t: Timing, s: Scope, sigma: Semantics, resp: Formula) -> Formula:
    phi = mtl_of_scope(s)
    ex = exit_scope(phi, sigma)
    only = s.kind.only
    inf, fin, past = (
        sigma is Semantics.FUTURE_INFINITE,
        sigma is Semantics.FUTURE_FINITE,
        sigma is Semantics.PAST,
    )
    kind = t.kind
    nresp = Not(resp)

    if kind is TimingKind.IMMEDIATELY:
        return nresp if only else resp

    if kind is TimingKind.EVENTUALLY:
        scoped = until_in_scope(And(Not(LAST), phi), resp, phi) if fin else until_in_scope(phi, resp, phi)
        if not only:
            return scoped
        if past:
            return R(UNBOUNDED, ex, nresp)
        return Not(scoped)

    if kind is TimingKind.NEXT:
        return Implies(Not(ex), X(nresp if only else resp))

    if kind in (TimingKind.ALWAYS, TimingKind.NEVER):
        target = resp if kind is TimingKind.ALWAYS else nresp
        if not only:
            return R(UNBOUNDED, ex, target)
        if past:
            # the past column negates the target inside the scoped until
            return until_in_scope(And(Not(LAST), phi), Not(target) if kind is TimingKind.ALWAYS else resp, phi)
        return Not(R(UNBOUNDED, ex, target))

    k = t.k
    if kind in (TimingKind.WITHIN, TimingKind.FOR):
        # within/only and for/reg share a shape, as do within/reg and for/only
        target = resp if kind is TimingKind.WITHIN else nresp
        must_hit = (kind is TimingKind.WITHIN) != only
        if must_hit:
            exit_soon = F(_iv(0, k - 1), ex)
            return Or(F(_iv(0, k), target), exit_soon)
        held = nresp if kind is TimingKind.WITHIN else resp
        if fin:
            return Or(G(_iv(0, k), held), R(UNBOUNDED, ex, held))
        return Or(G(_iv(0, k), held), U(_iv(0, k), And(held, phi), Not(phi)))

    if kind is TimingKind.AFTER:
        if not only:
            if inf:
                return Or(
                    And(G(_iv(0, k), nresp), mtl.x_power(resp, k + 1)),
                    U(_iv(0, k + 1), And(nresp, phi), Not(phi)),
                )
            if fin:
                return And(
                    Or(G(_iv(0, k), nresp), R(UNBOUNDED, ex, nresp)),
                    Or(F(_iv(0, k + 1), resp), F(_iv(0, k), ex)),
                )
            return Or(
                And(G(_iv(0, k), nresp), U(_iv(0, k + 1), nresp, resp)),
                U(_iv(0, k + 1), And(nresp, phi), Not(phi)),
            )
        if fin:
            return Or(
                Or(F(_iv(0, k), resp), F(_iv(0, k - 1), ex)),
                Or(G(_iv(0, k + 1), nresp), R(UNBOUNDED, ex, nresp)),
            )
        return Or(Or(F(_iv(0, k), resp), G(_iv(0, k + 1), nresp)), U(_iv(0, k + 1), phi, Not(phi)))

    stop = t.stop
    assert stop is not None
    nstop = Not(stop)
    leaves_scope = Or(stop, And(Not(phi), Y(phi)))
    if kind is TimingKind.UNTIL:
        if not only:
            if fin:
                return U(UNBOUNDED, And(resp, phi), mtl.disj(And(resp, LAST), stop, Not(phi)))
            return Or(G(UNBOUNDED, resp), U(UNBOUNDED, resp, leaves_scope))
        if fin:
            return R(UNBOUNDED, Or(nresp, ex), nstop)
        return Or(R(UNBOUNDED, nresp, nstop), R(UNBOUNDED, ex, nstop))

    # before stop
    if not only:
        if fin:
            return R(UNBOUNDED, Or(resp, ex), nstop)
        return Or(R(UNBOUNDED, resp, nstop), R(UNBOUNDED, ex, nstop))
    if fin:
        return mtl.disj(
            R(UNBOUNDED, Or(stop, ex), Or(nresp, stop)),
            mtl.conj(nresp, Not(phi), X(Not(phi))),
            R(UNBOUNDED, ex, nresp),
        )
    return Or(G(UNBOUNDED, nresp), U(UNBOUNDED, nresp, leaves_scope))


def core_implication(r: Requirement, sigma: Semantics) -> Formula:
    return Implies(triggers(r.scope, r.condition), timed_response(r.timing, r.scope, sigma, r.response))


def lift(phi: Formula, sigma: Semantics) -> Formula:
    if sigma is Semantics.PAST:
        return H(UNBOUNDED, phi)
    if sigma is Semantics.FUTURE_INFINITE:
        return G(UNBOUNDED, phi)
    return R(UNBOUNDED, LAST, phi)


def translate(r: Requirement, sigma: Semantics) -> Formula:
    return lift(core_implication(r, sigma), sigma)


def unlift(f: Formula) -> Formula:
    """The core implication of a translated formula (inverse of :func:`lift`)."""
    if isinstance(f, (G, H)):
        return f.arg
    if isinstance(f, R) and f.left == LAST:
        return f.right
    raise ValueError("not a lifted requirement formula")

