"""
Tests for exact surd arithmetic, integer matrices and the expression parser
"""
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st
from mpmath import mp, mpf

from superoptimalCF.core.errors import BadParameter, MixedRadicands, ParseError, PoleInInterval
from superoptimalCF.core.expr import parse_rational, parse_surd
from superoptimalCF.core.intervals import RatInterval
from superoptimalCF.core.matrix import (IntMatrix2, digit_matrix, fibonacci_matrix,
                                        mobius_apply, product_of_digits)
from superoptimalCF.core.surd import (GOLDEN_RATIO, ONE_OVER_SQRT5, Ordering, SurdValue,
                                      sign_of_quadratic, surd_compare)

small_ints = st.integers(min_value=-60, max_value=60)
denominators = st.integers(min_value=1, max_value=40)
digits = st.integers(min_value=1, max_value=60)


@st.composite
def surds(draw, radicand=5):
    return SurdValue(draw(small_ints), draw(small_ints), draw(denominators), radicand)


def _mp(value: SurdValue):
    with mp.workdps(60):
        return value.to_mpf()


# -- SurdValue -------------------------------------------------------------------

def test_canonical_form_removes_square_factors():
    assert SurdValue(0, 1, 1, 8) == SurdValue(0, 2, 1, 2)
    assert SurdValue(3, 2, 1, 4) == SurdValue(7)
    assert SurdValue(2, 4, 6, 5) == SurdValue(1, 2, 3, 5)
    assert SurdValue(1, 1, -2, 5) == SurdValue(-1, -1, 2, 5)


def test_rational_surds_compare_equal_to_fractions():
    assert SurdValue(3, 0, 6) == Fraction(1, 2)
    assert SurdValue.coerce(Fraction(2, 5)).as_fraction() == Fraction(2, 5)
    assert hash(SurdValue(1, 0, 2)) == hash(Fraction(1, 2))


def test_one_over_sqrt5_constant():
    assert 1 / SurdValue.sqrt(5) == ONE_OVER_SQRT5
    assert surd_compare(Fraction(4, 9), ONE_OVER_SQRT5) is Ordering.LESS
    assert surd_compare(Fraction(5, 11), ONE_OVER_SQRT5) is Ordering.GREATER


def test_golden_ratio_identity():
    # phi^2 = phi + 1
    assert GOLDEN_RATIO * GOLDEN_RATIO == GOLDEN_RATIO + 1
    assert GOLDEN_RATIO.floor() == 1
    assert (1 / GOLDEN_RATIO).floor() == 0


def test_mixed_radicands_are_rejected():
    with pytest.raises(MixedRadicands):
        SurdValue.sqrt(2) + SurdValue.sqrt(3)
    with pytest.raises(MixedRadicands):
        surd_compare(SurdValue.sqrt(2), SurdValue.sqrt(3))


def test_reciprocal_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        SurdValue(0).reciprocal()


@pytest.mark.parametrize("a,b,d,expected", [
    (0, 0, 5, 0),
    (3, 0, 0, 1),
    (-2, 1, 5, 1),        # -2 + 2.236
    (-3, 1, 5, -1),       # -3 + 2.236
    (3, -1, 5, 1),
    (2, -1, 5, -1),
    (-1, -1, 7, -1),
])
def test_sign_of_quadratic(a, b, d, expected):
    assert sign_of_quadratic(a, b, d) == expected


@given(surds(), surds())
def test_field_operations_match_mpmath(u, v):
    with mp.workdps(60):
        assert abs(_mp(u + v) - (_mp(u) + _mp(v))) < mpf(10) ** -50
        assert abs(_mp(u * v) - _mp(u) * _mp(v)) < mpf(10) ** -40


@given(surds(), surds())
def test_division_inverts_multiplication(u, v):
    assume(v.sign() != 0)
    assert (u * v) / v == u


@given(surds(), surds())
def test_compare_agrees_with_mpmath(u, v):
    ordering = surd_compare(u, v)
    if u == v:
        assert ordering is Ordering.EQUAL
        return
    with mp.workdps(60):
        assert (ordering is Ordering.LESS) == (_mp(u) < _mp(v))


@given(surds())
def test_floor_brackets_value(u):
    f = u.floor()
    assert surd_compare(f, u) is not Ordering.GREATER
    assert surd_compare(u, f + 1) is Ordering.LESS


@given(st.fractions(min_value=-100, max_value=100), st.fractions(min_value=-100, max_value=100))
def test_rational_arithmetic_matches_fraction(p, q):
    u, v = SurdValue.coerce(p), SurdValue.coerce(q)
    assert (u + v).as_fraction() == p + q
    assert (u - v).as_fraction() == p - q
    assert (u * v).as_fraction() == p * q
    assert (u < v) == (p < q)


# -- parser ----------------------------------------------------------------------

@pytest.mark.parametrize("text,expected", [
    ("sqrt(2)-1", SurdValue(-1, 1, 1, 2)),
    ("(sqrt(5)-1)/2", SurdValue(-1, 1, 2, 5)),
    ("1/sqrt(5)", ONE_OVER_SQRT5),
    ("1/2 + 3/4*sqrt(5)", SurdValue(2, 3, 4, 5)),
    ("sqrt(8)", SurdValue(0, 2, 1, 2)),
    ("sqrt(1/5)", ONE_OVER_SQRT5),
    ("-(2/5)", SurdValue(-2, 0, 5)),
    ("  7  ", SurdValue(7)),
])
def test_parse_surd(text, expected):
    assert parse_surd(text) == expected


@pytest.mark.parametrize("text", [
    "", "sqrt(2", "1/0", "sqrt(2)+sqrt(3)", "abc", "2**3", "sqrt(-1)", "sqrt(sqrt(2))", "1 2",
])
def test_parse_surd_rejects_malformed_text(text):
    with pytest.raises(ParseError):
        parse_surd(text)


def test_parse_rational():
    assert parse_rational("2/5") == Fraction(2, 5)
    assert parse_rational("1/2 - 1/3") == Fraction(1, 6)
    with pytest.raises(ParseError):
        parse_rational("sqrt(2)")


def test_parse_error_is_a_value_error():
    with pytest.raises(ValueError):
        parse_surd("((")


# -- matrices --------------------------------------------------------------------

def test_digit_matrix_product_is_continuant_block():
    # [0; 7, 15, 1] = 16/113 with previous convergent 15/106
    m = product_of_digits([7, 15, 1])
    assert (m.r, m.p, m.s, m.q) == (15, 16, 106, 113)


@given(st.lists(digits, min_size=1, max_size=25))
def test_determinant_alternates(word):
    assert product_of_digits(word).det == (-1) ** len(word)


@given(st.lists(digits, min_size=1, max_size=20))
def test_inverse_of_unimodular_product(word):
    m = product_of_digits(word)
    assert m @ m.inverse() == IntMatrix2.identity()
    assert m.inverse() @ m == IntMatrix2.identity()


@given(st.integers(min_value=0, max_value=30), st.integers(min_value=2, max_value=50))
def test_fibonacci_matrix_closed_form(n, a):
    assert fibonacci_matrix(n, a) == product_of_digits([1] * n + [a])


def test_power_and_transpose():
    m = digit_matrix(1)
    assert m.power(10) == product_of_digits([1] * 10)
    assert m.power(-3) @ m.power(3) == IntMatrix2.identity()
    assert IntMatrix2(1, 2, 3, 4).transpose() == IntMatrix2(1, 3, 2, 4)


def test_non_unimodular_inverse_raises():
    with pytest.raises(BadParameter):
        IntMatrix2(2, 0, 0, 1).inverse()


@given(st.lists(digits, min_size=1, max_size=12), st.fractions(min_value=0, max_value=1))
def test_mobius_of_digit_word_builds_continued_fraction(word, t):
    # M_[1,n] . t = [0; a_1, ..., a_n + t]
    value = Fraction(word[-1]) + t
    for a in reversed(word[:-1]):
        value = a + 1 / value
    assert mobius_apply(product_of_digits(word), t) == 1 / value


def test_mobius_on_intervals_and_surds():
    m = product_of_digits([2])
    assert mobius_apply(m, RatInterval(Fraction(0), Fraction(1))) == RatInterval(Fraction(1, 3), Fraction(1, 2))
    x = parse_surd("sqrt(2)-1")
    assert mobius_apply(m, x) == x           # sqrt(2)-1 = 1/(2 + (sqrt(2)-1))


def test_mobius_pole_raises():
    m = IntMatrix2(1, 0, 1, -1)             # t/(t-1)
    with pytest.raises(PoleInInterval):
        mobius_apply(m, 1)
    with pytest.raises(PoleInInterval):
        mobius_apply(m, RatInterval(Fraction(1, 2), Fraction(2)))
    with pytest.raises(PoleInInterval):
        mobius_apply(m, SurdValue(1, 0, 1, 2))
    # the pole sits at an endpoint
    with pytest.raises(PoleInInterval):
        mobius_apply(m, RatInterval(Fraction(0), Fraction(1)))


def test_interval_basics():
    i = RatInterval.around(Fraction(1, 2), Fraction(1, 8))
    assert i.width == Fraction(1, 4)
    assert Fraction(1, 2) in i
    assert not i.contains_zero()
    hull = i.dyadic_hull(2)
    assert hull.lo <= i.lo and i.hi <= hull.hi
    with pytest.raises(BadParameter):
        RatInterval(Fraction(1), Fraction(1))
