from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heckering.arith import (
    IDENTITY,
    S_MATRIX,
    T_MATRIX,
    GroupElement,
    egcd,
    hermite_right,
    smith_form,
)
from heckering.errors import NonIntegral

from oracles import elementary_divisors, hermite_of

entries = st.integers(-30, 30)


def integral_matrices():
    return st.tuples(entries, entries, entries, entries).filter(lambda t: t[0] * t[3] - t[1] * t[2] > 0)


def test_egcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0)]:
        g, x, y = egcd(a, b)
        assert g >= 0 and a * x + b * y == g


def test_parse_and_json_roundtrip():
    m = GroupElement.parse("1, 2; 3/2, 5")
    assert m.c == Fraction(3, 2)
    assert GroupElement.from_json(m.to_json()) == m
    assert str(GroupElement.parse(str(m))) == str(m)
    with pytest.raises(ValueError):
        GroupElement.parse("1,2,3")
    with pytest.raises(ValueError):
        GroupElement.parse("0,1;1,0")  # negative determinant


def test_group_law():
    assert S_MATRIX * S_MATRIX == GroupElement(-1, 0, 0, -1)
    st_ = S_MATRIX * T_MATRIX
    assert st_ * st_ * st_ == GroupElement(-1, 0, 0, -1)
    m = GroupElement(2, 1, 1, 3)
    assert m * m.inverse() == IDENTITY
    assert m.adjugate() == m.inverse().scale(m.det)
    assert m.transpose().transpose() == m


def test_int_entries_and_denominator():
    m = GroupElement(Fraction(1, 2), 0, 0, Fraction(2, 3))
    assert m.denominator() == 6
    assert not m.is_integral()
    with pytest.raises(NonIntegral):
        m.int_entries()


def test_action_on_cusps():
    assert S_MATRIX.act(None) == 0
    assert S_MATRIX.act(Fraction(0)) is None
    assert T_MATRIX.act(Fraction(1, 2)) == Fraction(3, 2)


def test_smith_examples():
    assert smith_form(GroupElement(1, 2, 0, 4)).pair == (1, 4)
    assert smith_form(GroupElement(6, 4, 2, 8)).pair == (2, 20)
    assert smith_form(GroupElement.diag(2, 2)).pair == (2, 2)


@given(integral_matrices())
def test_smith_matches_gcd_oracle(t):
    m = GroupElement(*t)
    sf = smith_form(m)
    assert sf.pair == elementary_divisors(*t)
    assert sf.U.det == 1 and sf.V.det == 1
    assert sf.U * m * sf.V == GroupElement.diag(*sf.pair)


@given(integral_matrices())
def test_hermite_matches_oracle(t):
    m = GroupElement(*t)
    (a, b, d), u = hermite_right(m)
    assert (a, b, d) == hermite_of(*t)
    assert u.det == 1 and u.is_integral()
    assert m * u == GroupElement(a, b, 0, d)
