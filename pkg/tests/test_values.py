"""Scalar parsing and the exact/float kind discipline."""

from fractions import Fraction

import pytest

from toepfix import MixedValueKinds
from toepfix import values


def test_parse_scalar_kinds():
    assert values.parse_scalar("3/5") == (Fraction(3, 5), values.EXACT)
    assert values.parse_scalar("0.6") == (Fraction(3, 5), values.EXACT)
    assert values.parse_scalar(2) == (2, None)
    assert values.parse_scalar(0.25) == (0.25, values.FLOAT)
    assert values.parse_scalar(Fraction(1, 3)) == (Fraction(1, 3), values.EXACT)


def test_parse_scalar_rejects_bool_and_garbage():
    with pytest.raises(ValueError):
        values.parse_scalar(True)
    with pytest.raises(ValueError):
        values.parse_scalar("one half")
    with pytest.raises(ValueError):
        values.parse_scalar(None)
    with pytest.raises(ValueError):
        values.parse_scalar("1/0")


def test_parse_values_integer_lists_are_exact():
    vals, kind = values.parse_values([1, 0, 2])
    assert kind == values.EXACT
    assert vals == (Fraction(1), Fraction(0), Fraction(2))


def test_parse_values_mixed_raises():
    with pytest.raises(MixedValueKinds):
        values.parse_values(["1/2", 0.5])
    vals, kind = values.parse_values([0.5, 1])
    assert kind == values.FLOAT and vals == (0.5, 1.0)


def test_coerce_refuses_float_to_exact():
    with pytest.raises(MixedValueKinds):
        values.coerce(0.5, values.EXACT)
    assert values.coerce(Fraction(1, 2), values.FLOAT) == 0.5
    assert values.coerce(2, values.EXACT) == Fraction(2)


def test_format_value():
    assert values.format_value(Fraction(6, 5)) == "6/5"
    assert values.format_value(0.25) == 0.25
    assert values.format_value(Fraction(3)) == "3"


def test_format_value_huge_fraction_does_not_trip_digit_cap():
    big = Fraction(7**9000, 3**9000)
    s = values.format_value(big)
    assert s.count("/") == 1 and len(s) > 10000
