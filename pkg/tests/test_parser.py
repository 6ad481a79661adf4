import pickle

import pytest

from malcev import XYZ, ParseError, apply_operator, jacobian, parse
from malcev.operators import GOp, LOp, RightMul
from malcev.parser import alphabet_for, variables_in

x, y, z = XYZ.vars()


def test_left_normed_juxtaposition():
    assert parse("x y z") == (x * y) * z
    assert parse("x (y z)") == x * (y * z)


def test_powers_repeat_factors():
    assert parse("y x^3") == ((y * x) * x) * x
    assert parse("y x^0") == y


def test_operators():
    j = jacobian(x, y, z)
    assert parse("J(x,y,z).L(x,y)") == apply_operator(j, LOp(x, y))
    assert parse("J(x,y,z).R(x)^2") == apply_operator(j, RightMul(x, 2))
    assert parse("J(x,y,z).G^2") == apply_operator(j, GOp(2))


def test_rational_coefficients():
    assert parse("3/2*x y - 1/2*x y") == x * y


@pytest.mark.parametrize("bad", ["", "x +", "(x y", "J(x,y)", "x $ y", "2*"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_parse_error_pickles():
    try:
        parse("(x y")
    except ParseError as exc:
        again = pickle.loads(pickle.dumps(exc))
        assert str(again) == str(exc)


def test_alphabet_for():
    assert variables_in("a b + c2 a") == ["a", "b", "c2"]
    assert alphabet_for("x y", "z") is XYZ
    assert alphabet_for("a b").names == ("a", "b")
