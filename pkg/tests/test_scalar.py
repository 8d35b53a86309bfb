from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weakrel import scalar as sc
from weakrel.scalar import INF, NEG_INF

moduli = st.one_of(st.integers(1, 60), st.fractions(min_value=Fraction(1, 8), max_value=20,
                                                    max_denominator=8))


def test_divides():
    assert sc.divides(2, 6)
    assert sc.divides(4, INF)
    assert not sc.divides(4, 6)
    assert not sc.divides(INF, 4)
    assert sc.divides(Fraction(1, 2), Fraction(3, 2))


def test_congruent():
    assert sc.congruent(7, 1, 2)
    assert sc.congruent(7, 7, INF)
    assert not sc.congruent(7, 2, 2)
    assert not sc.congruent(7, 1, INF)


def test_gcd_lcm():
    assert sc.lcm_ext(4, 6) == 12
    assert sc.gcd_ext(4, INF) == 4
    assert sc.gcd_ext(INF, 4) == 4
    assert sc.lcm_ext(4, INF) == INF
    # brute force: largest q dividing both 3/2 and 1/2 among denominators <= 8
    assert sc.gcd_ext(Fraction(3, 2), Fraction(1, 2)) == Fraction(1, 2)
    # brute force: smallest common multiple of 3/2 and 2 among halves
    assert sc.lcm_ext(Fraction(3, 2), 2) == 6


def test_bezout_combine():
    # scan of residues 0..11 for x = 1 [4] and x = 3 [6] finds only 9
    assert sc.bezout_combine(1, 4, 3, 6) % 12 == 9
    assert sc.bezout_combine(0, 2, 0, 3) % 6 == 0
    assert sc.bezout_combine(5, INF, 5, 3) == 5
    with pytest.raises(sc.ScalarError):
        sc.bezout_combine(0, 2, 1, 4)


@given(moduli, moduli)
def test_gcd_lcm_divisibility(a, b):
    g, m = sc.gcd_ext(a, b), sc.lcm_ext(a, b)
    assert sc.divides(g, a) and sc.divides(g, b)
    assert sc.divides(a, m) and sc.divides(b, m)


@given(st.integers(-50, 50), moduli, st.integers(-50, 50), moduli)
def test_bezout_satisfies_both(b, a, b2, a2):
    if not sc.congruent(b, b2, sc.gcd_ext(a, a2)):
        return
    x = sc.bezout_combine(b, a, b2, a2)
    assert sc.congruent(x, b, a) and sc.congruent(x, b2, a2)


def test_ext_add():
    assert sc.ext_add(1, INF) == INF
    assert sc.ext_add(NEG_INF, 3) == NEG_INF
    with pytest.raises(sc.ScalarError):
        sc.ext_add(NEG_INF, INF)


@given(st.fractions(max_denominator=6), st.fractions(max_denominator=6), st.fractions(max_denominator=6))
def test_ext_add_laws(a, b, c):
    assert sc.ext_add(a, b) == sc.ext_add(b, a)
    assert sc.ext_add(sc.ext_add(a, b), c) == sc.ext_add(a, sc.ext_add(b, c))


def test_normalize():
    assert type(sc.normalize(Fraction(4, 2))) is int
    assert sc.normalize(Fraction(1, 2)) == Fraction(1, 2)
    with pytest.raises(sc.ScalarError):
        sc.normalize(Fraction(1, 2), sc.INT)
    with pytest.raises(sc.ScalarError):
        sc.normalize(0.5)


@pytest.mark.parametrize("value,text", [(3, "3"), (-7, "-7"), (Fraction(-3, 4), "-3/4"),
                                        (INF, "+oo"), (NEG_INF, "-oo")])
def test_render_parse_roundtrip(value, text):
    assert sc.render(value) == text
    assert sc.parse(text) == value


def test_parse_rejects_rational_in_int_mode():
    with pytest.raises(sc.ScalarError):
        sc.parse("1/2", sc.INT)
