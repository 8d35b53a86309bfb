from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weakrel import scalar as sc
from weakrel.basis import BOT, TOP, Pair, Range, Residues, parse_setlit
from weakrel.bases import (ConstantBasis, CongruenceBasis, Const, Interval, IntervalBasis, cong,
                           interval_congruence)
from weakrel.scalar import INF, NEG_INF

Z = CongruenceBasis(sc.INT)
Q = CongruenceBasis(sc.RAT)
I = IntervalBasis(sc.INT)
C = ConstantBasis(sc.INT)
P = interval_congruence(sc.INT)


# -- congruences (values checked by enumerating residues in [-60, 60]) -------------


def test_congruence_meet():
    assert Z.meet(cong(4, 1), cong(6, 3)) == cong(12, 9)
    assert Z.meet(cong(4, 1), cong(6, 0)) is BOT
    assert Z.meet(cong(2, 0), cong(INF, 4)) == cong(INF, 4)


def test_congruence_join_and_ops():
    assert Z.join(cong(4, 1), cong(6, 3)) == cong(2, 1)
    assert Z.join(cong(INF, 3), cong(INF, 7)) == cong(4, 3)
    assert Z.neg(cong(4, 1)) == cong(4, 3)
    assert Z.scale(-3, cong(2, 1)) == cong(6, 3)
    assert Z.add(cong(4, 1), cong(6, 3)) == cong(2, 0)
    assert Z.scale(0, Z.top()) == cong(INF, 0)


def test_congruence_rational_meet():
    # 1/2 Z and 1/3 Z + 1/6 share exactly 1Z + 1/2
    assert Q.meet(cong(Fraction(1, 2), 0), cong(Fraction(1, 3), Fraction(1, 6))) == \
        cong(1, Fraction(1, 2))


def test_congruence_rendering():
    assert str(cong(1, 0)) == "Z"
    assert str(cong(4, 5)) == "4Z+1"
    assert str(cong(INF, -2)) == "{-2}"


def test_congruence_approx_in_integer_mode():
    assert Z.approx(Residues(Fraction(3, 2), Fraction(1, 2))) == cong(3, 2)
    assert Z.approx(Residues(2, Fraction(1, 2))) is BOT
    assert Z.approx(Range(3, 3)) == cong(INF, 3)
    assert Z.approx(Range(Fraction(1, 3), Fraction(2, 3))) is BOT


def test_rational_congruence_top_is_explicit():
    assert Q.top() is TOP
    assert Q.leq(cong(Fraction(1, 2), 0), TOP)
    assert not Q.leq(TOP, cong(Fraction(1, 2), 0))


# -- intervals -----------------------------------------------------------------------


def test_interval_ops():
    a, b = Interval(1, 2), Interval(10, 20)
    assert I.add(a, b) == Interval(11, 22)
    assert I.neg(b) == Interval(-20, -10)
    assert I.scale(-2, a) == Interval(-4, -2)
    assert I.meet(a, b) is BOT
    assert I.join(a, b) == Interval(1, 20)
    assert I.widen(Interval(0, 1), Interval(0, 2)) == Interval(0, INF)
    assert I.widen(Interval(0, 1), Interval(-1, 1)) == Interval(NEG_INF, 1)


def test_interval_integer_rounding():
    assert I.approx(Range(Fraction(1, 2), Fraction(7, 2))) == Interval(1, 3)
    assert I.approx(Range(Fraction(1, 3), Fraction(2, 3))) is BOT


def test_interval_scale_is_sound_not_exact_over_integers():
    # 2 * [0, 1] = {0, 2}; the interval [0, 2] also holds 1
    s = I.scale(2, Interval(0, 1))
    assert s == Interval(0, 2) and I.member(s, 1)


# -- constants -----------------------------------------------------------------------


def test_constants():
    assert C.add(Const(2), Const(3)) == Const(5)
    assert C.join(Const(2), Const(3)) is TOP
    assert C.meet(Const(2), Const(3)) is BOT
    assert C.approx(Range(4, 4)) == Const(4)
    assert C.approx(Range(4, 5)) is TOP


# -- reduced product -----------------------------------------------------------------


def test_product_reduction():
    assert P.make(Interval(0, 10), cong(4, 1)) == Pair(Interval(1, 9), cong(4, 1))
    assert P.make(Interval(5, 6), cong(4, 0)) is BOT
    assert P.make(Interval(3, 3), Z.top()) == Pair(Interval(3, 3), cong(INF, 3))


def test_product_render():
    assert P.render(P.make(Interval(NEG_INF, 5), cong(2, 1))) == "([-oo,5], 2Z+1)"


def test_product_add_is_not_exact():
    # {0,1,2} + {..., -8, -4} skips -5, but no interval x congruence pair
    # between the true sum and ([-oo,-2], Z) can express that hole
    s = P.add(P.make(Interval(0, 2), cong(1, 0)), P.make(Interval(NEG_INF, -4), cong(4, 0)))
    assert s == Pair(Interval(NEG_INF, -2), cong(1, 0))
    true_set = {a + b for a in (0, 1, 2) for b in range(-40, -3, 4)}
    assert -5 not in true_set and P.member(s, -5)


# -- set literals --------------------------------------------------------------------


def test_parse_setlit():
    assert parse_setlit("[-oo, 3]") == Range(NEG_INF, 3)
    assert parse_setlit("4Z+1") == Residues(4, 1)
    assert Range(1, 2).contains(Fraction(3, 2))
    assert Residues(Fraction(1, 2), 0).contains(Fraction(3, 2))


# -- generic laws on small random elements -------------------------------------------

small = st.integers(-6, 6)


@st.composite
def intervals(draw):
    lo = draw(st.one_of(small, st.just(NEG_INF)))
    hi = draw(st.one_of(small, st.just(INF)))
    return I.make(lo, hi)


@st.composite
def congruences(draw):
    m = draw(st.sampled_from([1, 2, 3, 4, 6, INF]))
    return cong(m, draw(small))


@pytest.mark.parametrize("basis,elems", [(I, intervals()), (Z, congruences())],
                         ids=["interval", "congruence"])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_lattice_laws(basis, elems, data):
    x, y = data.draw(elems), data.draw(elems)
    m, j = basis.meet(x, y), basis.join(x, y)
    assert basis.leq(m, x) and basis.leq(m, y)
    assert basis.leq(x, j) and basis.leq(y, j)
    w = basis.widen(x, y)
    assert basis.leq(j, w)
    for v in range(-12, 13):
        assert basis.member(m, v) == (basis.member(x, v) and basis.member(y, v))
        if basis.member(x, v):
            assert basis.member(basis.neg(x), -v)
            for u in range(-12, 13):
                if basis.member(y, u):
                    assert basis.member(basis.add(x, y), v + u)


def test_product_pairwise_emptiness_fails_over_rationals():
    # every pair meets, yet [-2,-2] has no multiple of 3
    Pq = interval_congruence(sc.RAT)
    fam = [Pq.make(Interval(-2, INF), cong(1, 0)), Pq.make(Interval(NEG_INF, INF), cong(3, 0)),
           Pq.make(Interval(NEG_INF, 0), cong(1, 0)), Pq.make(Interval(-3, -2), cong(1, 0))]
    assert all(Pq.meet(a, b) is not BOT for a in fam for b in fam)
    total = fam[0]
    for x in fam[1:]:
        total = Pq.meet(total, x)
    assert total is BOT
