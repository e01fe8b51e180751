"""Acceptance gate: six end-to-end criteria, each with a time budget.

Every criterion prints one PASS/FAIL line.  Run directly with
``python tests/test_acceptance.py`` for just the summary.
"""
from __future__ import annotations

import io
import os
import random
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from direct_checker import satisfies_batch  # noqa: E402
from fixtures import GOLD_FRET, GOLD_FV, GOLD_PROPS  # noqa: E402

from fret2mtl import mtl  # noqa: E402
from fret2mtl.batch import Program, run_finite  # noqa: E402
from fret2mtl.cli import main as cli_main  # noqa: E402
from fret2mtl.equiv import CheckConfig, Counterexample, Equivalent, check_equiv, check_implication, replay  # noqa: E402
from fret2mtl.fretish import enumerate_templates, parse_requirement, template_key  # noqa: E402
from fret2mtl.mtl import TRUE, Interval, MetricsReport, Not, metrics  # noqa: E402
from fret2mtl.text import parse_formula, print_formula  # noqa: E402
from fret2mtl.traces import LassoTrace, Trace, eval_lasso, stable_from  # noqa: E402
from fret2mtl.traces import eval as ev  # noqa: E402
from fret2mtl.translator import Semantics, translate, triggers, unlift  # noqa: E402


RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, elapsed: float, budget: float, detail: str = "") -> None:
    """Print the verdict line; under pytest it is repeated in the terminal summary."""
    status = "PASS" if ok and elapsed < budget else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({elapsed:.2f}s / {budget:.0f}s){' - ' + detail if detail else ''}"
    RESULTS.append(line)
    print(line, flush=True)


def timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


# ---------------------------------------------------------------- criteria


def gold_equivalence():
    cfg = CheckConfig(Semantics.FUTURE_INFINITE, GOLD_PROPS, max_prefix=4, max_loop=2)
    verdict = check_equiv(parse_formula(GOLD_FRET), parse_formula(GOLD_FV), cfg)
    return isinstance(verdict, Equivalent), f"{type(verdict).__name__}, {cfg.describe()}"


def template_totality():
    with tempfile.TemporaryDirectory() as tmp:
        code = cli_main(["enumerate", "--k", "3", "--out", tmp, "--semantics", "inf"], out=io.StringIO())
        files = [p for p in Path(tmp).iterdir() if p.suffix == ".mtl"]
    reqs = enumerate_templates(3)
    roots = {Semantics.PAST: mtl.H, Semantics.FUTURE_INFINITE: mtl.G, Semantics.FUTURE_FINITE: mtl.R}
    good = 0
    for r in reqs:
        for sigma in Semantics:
            f = translate(r, sigma)
            body = unlift(f)
            shape = isinstance(f, roots[sigma]) and (sigma is not Semantics.FUTURE_FINITE or f.left == mtl.LAST)
            single = isinstance(body, mtl.Implies) and body.left == triggers(r.scope, r.condition)
            if shape and single and parse_formula(print_formula(f)) == f:
                good += 1
    ok = code == 0 and len(files) == 240 and len(reqs) == 240 and good == 720
    return ok, f"{len(files)} files, {good}/720 well-formed translations"


def within_not_eventually():
    sigma = Semantics.FUTURE_FINITE
    within = translate(parse_requirement("TheParcel shall within 1 tick satisfy BeDelivered"), sigma)
    eventually = translate(parse_requirement("TheParcel shall eventually satisfy BeDelivered"), sigma)
    v = check_implication(within, eventually, CheckConfig(sigma, ("BeDelivered",), max_len=3))
    if not isinstance(v, Counterexample):
        return False, "no counterexample"
    a, b = replay(within, eventually, v)
    return a and not b, f"trace {[sorted(s) for s in v.trace.states]} at t={v.t}"


class _Gen:
    """Seeded random formulas, finite traces and lassos."""

    def __init__(self, seed: int) -> None:
        self.rng = random.Random(seed)

    def props(self):
        return ("p", "q", "r")[: self.rng.randint(1, 3)]

    def interval(self, lo_zero=False):
        if self.rng.random() < 0.4:
            return mtl.UNBOUNDED
        lo = 0 if lo_zero else self.rng.randint(0, 2)
        return Interval(lo, lo + self.rng.randint(0, 2))

    def formula(self, props, depth):
        rng = self.rng
        if depth == 0 or rng.random() < 0.25:
            return rng.choice([mtl.Atom(p) for p in props] + [TRUE, mtl.FALSE])
        sub = lambda: self.formula(props, depth - 1)  # noqa: E731
        op = rng.randrange(12)
        if op == 0:
            return Not(sub())
        if op in (1, 2, 3):
            return rng.choice([mtl.And, mtl.Or, mtl.Implies])(sub(), sub())
        if op == 4:
            return rng.choice([mtl.Y, mtl.Z, mtl.X])(sub())
        if op in (5, 6, 7):
            return rng.choice([mtl.O, mtl.H, mtl.F, mtl.G])(self.interval(), sub())
        return rng.choice([mtl.S, mtl.U, mtl.R])(self.interval(), sub(), sub())

    def states(self, props, n):
        return [{p for p in props if self.rng.random() < 0.5} for _ in range(n)]

    def trace(self, props):
        return Trace(self.states(props, self.rng.randint(1, 8)))

    def lasso(self, props):
        return LassoTrace(self.states(props, self.rng.randint(0, 4)), self.states(props, self.rng.randint(1, 3)))


def property_suite():
    gen = _Gen(2024)
    instances = violations = 0
    for _ in range(1200):
        props = gen.props()
        f, g = gen.formula(props, 3), gen.formula(props, 3)
        rho, lam = gen.trace(props), gen.lasso(props)
        n, p, l = len(rho), len(lam.prefix), len(lam.loop)
        iv = gen.interval(lo_zero=True)
        checks = []
        release, dual = mtl.R(iv, f, g), Not(mtl.U(iv, Not(f), Not(g)))
        checks += [ev(release, rho, t) == ev(dual, rho, t) for t in range(n)]
        iv2 = gen.interval()
        checks += [ev(mtl.O(iv2, f), rho, t) == ev(mtl.S(iv2, TRUE, f), rho, t) for t in range(n)]
        checks += [ev(Not(mtl.Y(TRUE)), rho, t) == (t == 0) for t in range(n)]
        checks += [ev(mtl.Z(TRUE), rho, t) for t in range(n)]
        checks.append(not ev(mtl.Y(TRUE), rho, 0))
        longer = lam.unroll(1)
        checks += [eval_lasso(f, lam, t) == eval_lasso(f, longer, t) for t in range(p + l)]
        b = stable_from(f, p, l)
        checks += [eval_lasso(f, lam, t) == eval_lasso(f, lam, t + l) for t in range(b, b + 2 * l)]
        instances += 1
        violations += checks.count(False)
    return violations == 0 and instances >= 1000, f"{instances} instances, {violations} violations"


def metric_ordering():
    fv, fret = metrics(parse_formula(GOLD_FV)), metrics(parse_formula(GOLD_FRET))
    ordered = fv.size < fret.size and fv.props < fret.props and fv.temp_ops < fret.temp_ops
    snapshot = fv == MetricsReport(24, 5, 9, 3) and fret == MetricsReport(156, 27, 49, 6)
    return ordered and snapshot, f"FV {fv.as_dict()} vs FRET {fret.as_dict()}"


def oracle_cross_check():
    reqs = random.Random(7).sample(enumerate_templates(3), 20)
    compared = 0
    for r in reqs:
        f = translate(r, Semantics.FUTURE_FINITE)
        props = sorted(mtl.atoms(f))
        k = len(props)
        prog = Program([f])
        for n in range(1, 6):
            codes = np.arange(1 << (k * n), dtype=np.int64)
            shifts = np.arange(n * k - 1, -1, -1)
            bits = ((codes[:, None] >> shifts) & 1).astype(bool).reshape(len(codes), n, k)
            cols = {a: bits[:, :, j] for j, a in enumerate(props)}
            (vals,) = run_finite(prog, cols, n, len(codes))
            if not np.array_equal(vals[:, 0], satisfies_batch(r, cols, n, len(codes))):
                return False, f"disagreement on {template_key(r)}, length {n}"
            compared += len(codes)
    return True, f"20 templates, {compared} traces"


CRITERIA = [
    (1, "gold pair equivalent on bounded lassos", gold_equivalence, 60.0),
    (2, "240 templates, 720 well-formed translations", template_totality, 5.0),
    (3, "within 1 tick does not imply eventually", within_not_eventually, 1.0),
    (4, "semantic property suite", property_suite, 30.0),
    (5, "shorter metrics than the FRET formula", metric_ordering, 1.0),
    (6, "finite translation agrees with direct reading", oracle_cross_check, 60.0),
]


@pytest.mark.parametrize("number,title,fn,budget", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, budget):
    ok, detail, elapsed = timed(fn)
    report(number, title, ok, elapsed, budget, detail)
    assert ok, detail
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"


if __name__ == "__main__":
    failed = 0
    for number, title, fn, budget in CRITERIA:
        ok, detail, elapsed = timed(fn)
        report(number, title, ok, elapsed, budget, detail)
        failed += not (ok and elapsed < budget)
    sys.exit(1 if failed else 0)
