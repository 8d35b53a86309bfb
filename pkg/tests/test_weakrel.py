from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weakrel import scalar as sc
from weakrel import weakrel as wr
from weakrel.basis import BOT, Range
from weakrel.bases import ConstantBasis, CongruenceBasis, Interval, IntervalBasis, cong, \
    interval_congruence
from weakrel.expr import Add, Cmp, DiffCmp, Mul, Num, Random, Var
from weakrel.oracle import Window, closure_by_paths, gamma_enum
from weakrel.scalar import INF, NEG_INF

I = IntervalBasis(sc.INT)
W3 = Window.uniform(3, range(-8, 9))


def itv(lo, hi):
    return Interval(lo, hi)


def chain():
    # v1 = 1 and v2 - v1 = 2; the only point is (0, 1, 3)
    return wr.from_cells(I, 3, {(0, 1): itv(1, 1), (1, 2): itv(2, 2)})


def test_chain_closure_and_project():
    m = chain()
    assert gamma_enum(m, W3) == {(0, 1, 3)}
    assert wr.project(m, 2) == itv(3, 3)
    assert wr.close(m).cell(0, 2) == itv(3, 3)
    assert wr.close(m).closed == "closed"


def test_coherence_is_structural():
    m = wr.close(chain())
    for i in range(3):
        assert m.cell(i, i) == itv(0, 0)
        for j in range(3):
            assert m.cell(j, i) == I.neg(m.cell(i, j))


def test_empty_cycle():
    # v1 - v0 in [1,1], v2 - v1 in [1,1], v0 - v2 in [0,0]: the cycle sums to 2
    m = wr.from_cells(I, 3, {(0, 1): itv(1, 1), (1, 2): itv(1, 1), (2, 0): itv(0, 0)})
    assert wr.is_empty(m)
    assert gamma_enum(m, W3) == set()


def test_congruence_cycle_is_empty():
    Z = CongruenceBasis(sc.INT)
    m = wr.from_cells(Z, 3, {(0, 1): cong(2, 0), (1, 2): cong(2, 0), (0, 2): cong(2, 1)})
    assert wr.is_empty(m)


def test_translate():
    m = wr.from_cells(I, 3, {(1, 2): itv(0, 0), (0, 1): itv(0, 3)})
    t = wr.assign_translate(m, 1, 2)
    assert wr.close(t).cell(1, 2) == itv(-2, -2)
    assert wr.project(t, 1) == itv(2, 5)
    assert gamma_enum(t, W3) == {(0, x + 2, y) for (_, x, y) in gamma_enum(m, W3)}


def test_copy_offset():
    m = wr.from_cells(I, 3, {(0, 1): itv(0, 3), (0, 2): itv(7, 7)})
    r = wr.assign_copy_offset(m, 2, 1, 5)
    assert wr.project(r, 2) == itv(5, 8)
    assert wr.close(r).cell(1, 2) == itv(5, 5)


def test_sum_keeps_relations():
    m = wr.from_cells(I, 4, {(0, 1): itv(1, 2), (0, 2): itv(10, 20)})
    r = wr.assign_sum(m, 3, 1, 2)
    c = wr.close(r)
    assert c.cell(0, 3) == itv(11, 22)
    assert c.cell(1, 3) == itv(10, 20)
    assert c.cell(2, 3) == itv(1, 2)


def test_generic_assignment():
    m = wr.from_cells(I, 3, {(0, 1): itv(1, 2)})
    d = wr.WeaklyRelational(I, 3)
    r = d.assign(m, 2, Add(Mul(3, Var(1)), Num(1)))
    assert wr.project(r, 2) == itv(4, 7)
    r = d.assign(r, 2, Random())
    assert wr.project(r, 2) == itv(NEG_INF, INF)


def test_forget():
    m = chain()
    f = wr.forget(m, 1)
    assert wr.project(f, 1) == itv(NEG_INF, INF)
    assert wr.project(f, 2) == itv(3, 3)
    with pytest.raises(ValueError):
        wr.forget(m, 0)


def test_guards_through_domain():
    d = wr.WeaklyRelational(I, 3)
    m = d.guard(d.top(), DiffCmp(2, 1, "<=", 0))
    m = d.guard(m, Cmp(1, "<=", 4))
    assert d.project(m, 2) == itv(NEG_INF, 4)
    m = d.guard(m, Cmp(2, ">", 4))
    assert d.is_bottom(m)


def test_widen_does_not_close_left_argument():
    # the left operand's cell (0, 2) is implicitly [3,3]; widening must
    # compare the stored top cell, not the closed one
    left = chain()
    right = wr.from_cells(I, 3, {(0, 1): itv(1, 1), (1, 2): itv(2, 2), (0, 2): itv(3, 3)})
    w = wr.widen(left, right)
    assert w.cell(0, 2) == itv(NEG_INF, INF)


def test_join_and_leq():
    a = wr.from_cells(I, 2, {(0, 1): itv(0, 1)})
    b = wr.from_cells(I, 2, {(0, 1): itv(5, 6)})
    j = wr.join(a, b)
    assert wr.project(j, 1) == itv(0, 6)
    assert wr.leq(a, j) and wr.leq(b, j) and not wr.leq(j, a)
    assert wr.leq(wr.empty(I, 2), a)


def test_render_lines():
    m = chain()
    assert wr.render_lines(m, ["0", "x", "y"]) == ["x in [1,1]", "y in [3,3]", "y - x in [2,2]"]
    assert wr.render_lines(wr.empty(I, 2)) == ["_|_"]


def test_rational_intervals():
    Q = IntervalBasis(sc.RAT)
    m = wr.from_cells(Q, 3, {(0, 1): Interval(Fraction(1, 2), 1), (1, 2): Interval(0, Fraction(1, 3))})
    assert wr.project(m, 2) == Interval(Fraction(1, 2), Fraction(4, 3))


def test_translated_equalities():
    C = ConstantBasis(sc.INT)
    d = wr.WeaklyRelational(C, 3)
    m = d.assign(d.top(), 1, Random())
    m = d.assign(m, 2, Add(Var(1), Num(3)))
    m = d.assign(m, 1, Add(Var(1), Num(1)))
    assert wr.render_lines(m, ["0", "x", "y"]) == ["y - x in 2"]


def test_product_matrix():
    P = interval_congruence(sc.INT)
    m = wr.from_cells(P, 2, {(0, 1): P.make(itv(0, 10), cong(4, 1))})
    assert P.render(wr.project(m, 1)) == "([1,9], 4Z+1)"


# -- randomized agreement with the path-enumeration oracle ----------------------------


@st.composite
def interval_matrices(draw):
    n = draw(st.integers(2, 4))
    cells = {}
    for i in range(n):
        for j in range(n):
            if i != j and draw(st.booleans()):
                lo = draw(st.one_of(st.integers(-4, 4), st.just(NEG_INF)))
                hi = draw(st.one_of(st.integers(-4, 4), st.just(INF)))
                cells[(i, j)] = I.make(lo, hi) if lo <= hi else I.make(hi, lo)
    return wr.from_cells(I, n, cells)


@settings(max_examples=200, deadline=None)
@given(interval_matrices())
def test_closure_matches_paths(m):
    c = wr.close(m)
    p = closure_by_paths(m)
    assert c == p
    assert wr.close_full(m) == p


@settings(max_examples=100, deadline=None)
@given(interval_matrices(), st.data())
def test_incremental_after_guard(m, data):
    c = wr.close(m)
    i = data.draw(st.integers(0, m.n - 1))
    j = data.draw(st.integers(0, m.n - 1))
    lo = data.draw(st.integers(-3, 3))
    g = wr.guard(c, i, j, Range(lo, lo + data.draw(st.integers(0, 3))))
    assert wr.close(g) == wr.close_full(g)


# -- reduced product of zones and congruence matrices ---------------------------------


def _product(n):
    from weakrel.analyzer import make_domain
    return make_domain("zone-product", sc.INT, n)


def test_product_reduction_tightens_both_components():
    from weakrel.expr import Mod, VarInSet
    d = _product(2)
    s = d.guard(d.top(), VarInSet(1, Range(0, 10)))
    s = d.guard(s, Mod(1, None, 4, 1))
    assert d.project(s, 1) == (itv(1, 9), cong(4, 1))
    # 4Z+1 meets [4,6] only at 5
    s = d.guard(s, VarInSet(1, Range(4, 6)))
    assert d.project(s, 1) == (itv(5, 5), cong(INF, 5))
    assert d.constraints(d.guard(d.top(), Cmp(1, "==", 3)), ["0", "x"]) == ["x in [3,3]"]


def test_product_detects_empty_reduction():
    from weakrel.expr import Mod, VarInSet
    d = _product(2)
    s = d.guard(d.top(), VarInSet(1, Range(5, 6)))
    assert d.is_bottom(d.guard(s, Mod(1, None, 4, 0)))


def test_product_relational_parity():
    # y = x + 1 with x even: y - x is 1 and y is odd
    from weakrel.expr import Mod
    d = _product(3)
    s = d.assign(d.top(), 1, Random())
    s = d.guard(s, Mod(1, None, 2, 0))
    s = d.assign(s, 2, Add(Var(1), Num(1)))
    lines = d.constraints(s, ["0", "x", "y"])
    assert lines == ["x in 2Z+0", "y in 2Z+1", "y - x in [1,1]"]


def test_product_widen_is_componentwise_without_reduction():
    d = _product(2)
    a = d.assign(d.top(), 1, Num(1))
    b = d.join(a, d.assign(d.top(), 1, Num(3)))
    w = d.widen(a, b)
    assert w.left.cell(0, 1) == itv(1, INF) and w.right.cell(0, 1) == cong(2, 1)
    assert d.leq(b, w) and not d.leq(w, b)
