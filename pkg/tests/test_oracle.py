from fractions import Fraction

import pytest

from weakrel import scalar as sc
from weakrel import weakrel as wr
from weakrel.bases import Interval, IntervalBasis
from weakrel.lang import parse
from weakrel.oracle import BudgetExhausted, Window, closure_by_paths, concrete_run, gamma_enum
from pathlib import Path

I = IntervalBasis(sc.INT)
WALK = (Path(__file__).resolve().parent.parent / "programs" / "randomwalk").read_text()


def test_window_requires_zero():
    with pytest.raises(ValueError):
        Window.uniform(2, [1, 2])
    w = Window.default(2, sc.RAT, radius=1)
    assert Fraction(1, 3) in w.values[1] and w.values[0] == (0,)


def test_gamma_enum_limit():
    m = wr.from_cells(I, 2, {(0, 1): Interval(0, 5)})
    w = Window.uniform(2, range(-9, 10))
    assert gamma_enum(m, w) == {(0, v) for v in range(6)}
    assert len(gamma_enum(m, w, limit=2)) == 2


def test_closure_by_paths_detects_empty():
    m = wr.from_cells(I, 3, {(0, 1): Interval(2, 2), (1, 2): Interval(1, 1), (0, 2): Interval(0, 0)})
    assert closure_by_paths(m).is_empty_state


def test_concrete_randomwalk_parity():
    # five unit steps from 0 end on an odd number in [-5, 5]
    res = concrete_run(parse(WALK))
    xs = {pt[2] for pt in res.points["bullet"]}
    assert xs == {-5, -3, -1, 1, 3, 5}


def test_nondeterministic_loop_truncates():
    res = concrete_run(parse("x = 0; while (?) { x = x + 2; } @end: skip;"), budget=5)
    assert {pt[1] for pt in res.points["end"]} == {0, 2, 4, 6, 8, 10}


def test_deterministic_loop_budget():
    with pytest.raises(BudgetExhausted):
        concrete_run(parse("x = 0; while (x >= 0) { x = x + 1; }"), budget=10)


def test_random_assignment_uses_choices():
    res = concrete_run(parse("x = ?; @a: skip;"), choices=[1, 7])
    assert res.points["a"] == {(0, 1), (0, 7)}
