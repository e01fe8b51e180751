import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fret2mtl import mtl
from fret2mtl.mtl import TRUE, UNBOUNDED, Atom, Interval, Not
from fret2mtl.text import parse_formula
from fret2mtl.traces import (
    LassoTrace,
    Trace,
    eval as ev,
    eval_lasso,
    format_trace,
    holds_at_all_positions,
    holds_globally,
    parse_trace,
    parse_trace_text,
    stable_from,
)
from strategies import formulas, intervals, lassos, traces

p = Atom("p")


def tr(*states):
    return Trace([set(s) for s in states])


# ------------------------------------------------------------ clause examples


@given(traces())
def test_start_is_not_yesterday_true(rho):
    assert ev(Not(mtl.Y(TRUE)), rho, 0)
    for t in range(1, len(rho)):
        assert not ev(Not(mtl.Y(TRUE)), rho, t)


@given(traces())
def test_weak_and_strong_yesterday(rho):
    assert holds_globally(mtl.Z(TRUE), rho)
    assert not ev(mtl.Y(TRUE), rho, 0)
    assert not holds_globally(mtl.Y(TRUE), rho)


def test_once_window():
    rho = tr((), ("p",), ())
    assert ev(mtl.O(Interval(1, 2), p), rho, 2)
    assert not ev(mtl.O(Interval(0, 0), p), rho, 2)


def test_last_only_at_end():
    rho = tr((), (), ())
    assert [ev(mtl.LAST, rho, t) for t in range(3)] == [False, False, True]


def test_next_needs_a_successor():
    rho = tr(("p",), ("p",))
    assert ev(mtl.X(p), rho, 0) and not ev(mtl.X(p), rho, 1)
    assert ev(parse_formula("p"), rho, 0) and holds_globally(p, rho)


def test_finite_future_windows_clip():
    rho = tr((), ("p",))
    assert ev(parse_formula("F[0,5] p"), rho, 0)
    assert ev(parse_formula("G[1,5] p"), rho, 0)
    assert not ev(parse_formula("F[2,5] p"), rho, 0)
    assert ev(parse_formula("G[2,5] p"), rho, 0)


def test_release_disjunctive_clause():
    # q held up to and including the point where p releases it
    rho = tr(("q",), ("p", "q"), ())
    assert ev(parse_formula("p V q"), rho, 0)
    assert not ev(parse_formula("p V q"), tr(("q",), ("p",), ()), 0)
    # on a finite trace q holding to the end is enough
    assert ev(parse_formula("p V q"), tr(("q",), ("q",)), 0)


def test_out_of_range():
    with pytest.raises(IndexError):
        ev(p, tr(()), 1)


# ------------------------------------------------------------ lasso examples


def test_lasso_examples():
    lam = LassoTrace([set()], [{"p"}])
    g = parse_formula("G p")
    assert not eval_lasso(g, lam, 0)
    assert eval_lasso(g, lam, 1)
    assert not eval_lasso(parse_formula("F p"), LassoTrace([{"p"}], [set()]), 1)
    assert eval_lasso(parse_formula("G F p"), LassoTrace([], [set(), {"p"}]), 0)
    assert not eval_lasso(mtl.LAST, LassoTrace([], [set()]), 0)


def test_lasso_state_indexing():
    lam = LassoTrace([{"a"}], [{"b"}, {"c"}])
    assert [sorted(lam.state(t)) for t in range(6)] == [["a"], ["b"], ["c"], ["b"], ["c"], ["b"]]


# ---------------------------------------------------------- trace file format


def test_trace_format_round_trip():
    rho = tr(("p", "q"), (), ("q",))
    text = format_trace(rho, t=2)
    assert text == "p,q\n-\nq\nt=2\n"
    assert parse_trace_text(text) == (rho, 2)
    lam = LassoTrace([{"p"}], [set(), {"q"}])
    assert parse_trace(format_trace(lam)) == lam


@pytest.mark.parametrize("bad", ["p,,q\n", "---loop---\n---loop---\n-\n", "", "p\n---loop---\n"])
def test_trace_format_errors(bad):
    with pytest.raises(ValueError):
        parse_trace(bad)


@given(lassos())
def test_lasso_file_round_trip(lam):
    assert parse_trace(format_trace(lam)) == lam


# ------------------------------------------------------------- properties


@given(formulas(depth=3), formulas(depth=3), intervals(lo_zero=True), traces())
def test_release_until_duality(f, g, iv, rho):
    dual = Not(mtl.U(iv, Not(f), Not(g)))
    for t in range(len(rho)):
        assert ev(mtl.R(iv, f, g), rho, t) == ev(dual, rho, t)


@given(formulas(depth=3), formulas(depth=3), intervals(lo_zero=True), lassos())
def test_release_until_duality_lasso(f, g, iv, lam):
    dual = Not(mtl.U(iv, Not(f), Not(g)))
    for t in range(len(lam.prefix) + 2 * len(lam.loop)):
        assert eval_lasso(mtl.R(iv, f, g), lam, t) == eval_lasso(dual, lam, t)


def test_duality_needs_window_starting_now():
    # with a window that starts later, the dual until may use a left operand
    # before the window while release only looks inside it
    f, g = Atom("f"), Atom("g")
    rho = tr(("f", "g"), ("g",), ())
    iv = Interval(1, 2)
    assert not ev(mtl.R(iv, f, g), rho, 0)
    assert ev(Not(mtl.U(iv, Not(f), Not(g))), rho, 0)


@given(formulas(depth=3), intervals(), traces())
def test_once_is_true_since(f, iv, rho):
    for t in range(len(rho)):
        assert ev(mtl.O(iv, f), rho, t) == ev(mtl.S(iv, TRUE, f), rho, t)


@given(formulas(depth=3), formulas(depth=3), traces())
def test_yesterday_away_from_start(f, g, rho):
    for t in range(1, len(rho)):
        assert ev(Not(mtl.Y(f)), rho, t) == ev(mtl.Y(Not(f)), rho, t)
        k = mtl.Implies(mtl.Y(mtl.Implies(f, g)), mtl.Implies(mtl.Y(f), mtl.Y(g)))
        assert ev(k, rho, t)
    assert ev(mtl.Z(f), rho, 0) and not ev(mtl.Y(f), rho, 0)


@given(formulas(depth=3), lassos(), st.integers(1, 3))
def test_lasso_unrolling_invariance(f, lam, times):
    longer = lam.unroll(times)
    for t in range(len(lam.prefix) + len(lam.loop) * (times + 1)):
        assert eval_lasso(f, lam, t) == eval_lasso(f, longer, t)


@given(formulas(depth=3, future=False, last=False), traces(), st.lists(st.frozensets(st.sampled_from("pqr")), min_size=1, max_size=3))
def test_past_formulas_ignore_the_future(f, rho, loop):
    lam = LassoTrace(rho.states, loop)
    for t in range(len(rho)):
        assert ev(f, rho, t) == eval_lasso(f, lam, t)


@given(formulas(depth=3), lassos())
def test_periodic_after_stabilization(f, lam):
    p, l = len(lam.prefix), len(lam.loop)
    b = stable_from(f, p, l)
    for t in range(b, b + 2 * l):
        assert eval_lasso(f, lam, t) == eval_lasso(f, lam, t + l)


def test_periodicity_needs_more_than_prefix_plus_loop():
    # three past steps on a one-position loop: the value changes at t = 3,
    # later than prefix + loop
    f = mtl.Y(mtl.Y(mtl.Y(p)))
    lam = LassoTrace([], [{"p"}])
    values = [eval_lasso(f, lam, t) for t in range(6)]
    assert values == [False, False, False, True, True, True]
    # t = 2 lies in [p + l, p + 3l] = [1, 3], yet t and t + l disagree
    assert eval_lasso(f, lam, 2) != eval_lasso(f, lam, 2 + 1)
    assert stable_from(f, 0, 1) == 3


@given(formulas(depth=3), lassos())
def test_lasso_matches_long_finite_prefix(f, lam):
    # past-only and bounded information: a long unrolling evaluated finitely
    # agrees at early positions for formulas without future operators
    assume(not any(isinstance(n, mtl.FUTURE_OPS) or n == mtl.LAST for n in mtl.walk(f)))
    rho = Trace([lam.state(t) for t in range(10)])
    for t in range(10):
        assert ev(f, rho, t) == eval_lasso(f, lam, t)


def test_holds_at_all_positions():
    assert holds_at_all_positions(parse_formula("F p"), LassoTrace([], [set(), {"p"}]))
    assert not holds_at_all_positions(parse_formula("H ! p"), LassoTrace([], [set(), {"p"}]))
    assert holds_at_all_positions(mtl.G(UNBOUNDED, TRUE), tr(()))
