"""Series arithmetic: frozen examples plus algebraic property tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rioplex.errors import (
    NonzeroInnerConstantError,
    NotOrderOneError,
    ParseError,
    TruncationExceededError,
    ZeroConstantTermError,
)
from rioplex.fps import PowerSeries, rat, rat_str

F = Fraction


def series(*coeffs, trunc=None):
    return PowerSeries.of(coeffs, trunc)


class TestAdd:
    def test_symmetric_cancellation(self):
        assert series(1, 1, 0) + series(1, -1, 0) == series(2, 0, 0)

    def test_additive_identity_truncates_to_min(self):
        s = series(5, 7, 9, 11)
        assert PowerSeries.zero(3) + s == s.truncate(3)

    def test_hand_sum(self):
        assert series(1, 2, 3) + series(1, 1, 0) == series(2, 3, 3)


class TestMul:
    def test_difference_of_squares(self):
        out = series(1, 1, 0) * series(1, -1, 0)
        assert out == series(1, 0, -1)

    def test_geometric_times_one_minus_x(self):
        out = PowerSeries.geometric(5) * series(1, -1, trunc=5)
        assert out == PowerSeries.one(5)

    def test_binomial_square(self):
        out = series(1, 1, trunc=4) * series(1, 1, trunc=4)
        assert out == series(1, 2, 1, 0)

    def test_scalar(self):
        assert 2 * series(1, 3) == series(2, 6)
        assert series(1, 3) / 2 == series(F(1, 2), F(3, 2))


class TestMulInverse:
    def test_geometric(self):
        assert series(1, -1, trunc=4).mul_inverse() == series(1, 1, 1, 1)

    def test_constant(self):
        assert series(2, trunc=2).mul_inverse() == series(F(1, 2), 0)

    def test_one_plus_x_squared(self):
        sq = series(1, 2, 1, trunc=4)
        assert sq.mul_inverse() == series(1, -2, 3, -4)
        assert sq * sq.mul_inverse() == PowerSeries.one(4)

    def test_zero_constant_term_rejected(self):
        with pytest.raises(ZeroConstantTermError):
            series(0, 1).mul_inverse()


class TestCompose:
    def test_identity_inner(self):
        out = PowerSeries.geometric(4).compose(PowerSeries.x(4))
        assert out == series(1, 1, 1, 1)

    def test_geometric_of_geometric_shift(self):
        inner = PowerSeries.x(4) * PowerSeries.geometric(4)
        out = PowerSeries.geometric(4).compose(inner)
        assert out == series(1, 1, 2, 4)

    def test_substitute_square(self):
        out = series(1, 1, trunc=4).compose(series(0, 0, 1, trunc=4))
        assert out == series(1, 0, 1, 0)

    def test_nonzero_inner_rejected(self):
        with pytest.raises(NonzeroInnerConstantError):
            series(1, 1).compose(series(1, 1))


class TestCompInverse:
    def test_identity(self):
        assert PowerSeries.x(4).comp_inverse() == PowerSeries.x(4)

    def test_x_over_one_minus_x(self):
        f = PowerSeries.x(5) * PowerSeries.geometric(5)
        g = f.comp_inverse()
        assert g == series(0, 1, -1, 1, -1)
        assert f.compose(g) == PowerSeries.x(5)

    def test_two_x_over_one_minus_x(self):
        f = 2 * (PowerSeries.x(4) * PowerSeries.geometric(4))
        g = f.comp_inverse()
        assert g == series(0, F(1, 2), F(-1, 4), F(1, 8))
        assert f.compose(g) == PowerSeries.x(4)

    def test_not_order_one_rejected(self):
        with pytest.raises(NotOrderOneError):
            series(1, 1).comp_inverse()
        with pytest.raises(NotOrderOneError):
            series(0, 0, 1).comp_inverse()


class TestBinomial:
    def test_integer_exponent(self):
        assert PowerSeries.binomial(2, 4) == series(1, 2, 1, 0)

    def test_half_exponent(self):
        half = PowerSeries.binomial(F(1, 2), 4)
        assert half == series(1, F(1, 2), F(-1, 8), F(1, 16))
        assert half * half == series(1, 1, 0, 0)

    def test_zero_exponent(self):
        assert PowerSeries.binomial(0, 3) == PowerSeries.one(3)

    @pytest.mark.parametrize("r", [F(1, 2), F(3, 2), F(-1, 2)])
    def test_square_law(self, r):
        n = 9
        assert PowerSeries.binomial(r, n) * PowerSeries.binomial(r, n) == PowerSeries.binomial(2 * r, n)


nonzero_rationals = st.fractions(
    min_value=-6, max_value=6, max_denominator=5
).filter(lambda f: f != 0)
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)


@settings(deadline=None, max_examples=60)
@given(
    head=nonzero_rationals,
    tail=st.lists(rationals, min_size=3, max_size=7),
)
def test_mul_inverse_roundtrip(head, tail):
    s = PowerSeries.of([head] + tail)
    assert s * s.mul_inverse() == PowerSeries.one(s.trunc)


@settings(deadline=None, max_examples=60)
@given(
    slope=nonzero_rationals,
    tail=st.lists(rationals, min_size=2, max_size=6),
)
def test_comp_inverse_roundtrip(slope, tail):
    s = PowerSeries.of([0, slope] + tail)
    g = s.comp_inverse()
    assert s.compose(g) == PowerSeries.x(s.trunc)
    assert g.compose(s) == PowerSeries.x(s.trunc)


@settings(deadline=None, max_examples=40)
@given(
    a=st.lists(rationals, min_size=2, max_size=6),
    b=st.lists(rationals, min_size=2, max_size=6),
)
def test_mul_commutes_truncation(a, b):
    sa, sb = PowerSeries.of(a), PowerSeries.of(b)
    assert sa * sb == sb * sa
    assert (sa * sb).trunc == min(sa.trunc, sb.trunc)


def test_truncation_never_extends():
    s = series(1, 2, 3)
    with pytest.raises(TruncationExceededError):
        s.truncate(5)
    with pytest.raises(TruncationExceededError):
        s.coefficient(3)


def test_json_roundtrip():
    s = series(F(1, 2), -3, 0, F(7, 5))
    obj = s.to_json_obj()
    assert obj == {"trunc": 4, "coeffs": ["1/2", "-3", "0", "7/5"]}
    assert PowerSeries.from_json_obj(obj) == s


def test_json_bad_trunc_rejected():
    with pytest.raises(ParseError):
        PowerSeries.from_json_obj({"trunc": 3, "coeffs": ["1"]})


def test_rat_parsing():
    assert rat("3/4") == F(3, 4)
    assert rat("-5") == F(-5)
    assert rat_str(F(-5)) == "-5"
    assert rat_str(F(2, 6)) == "1/3"
    with pytest.raises(ParseError):
        rat("1/0")
    with pytest.raises(ParseError):
        rat("x")
