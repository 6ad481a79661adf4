from fractions import Fraction

import pytest

from malcev import XYZ, apply_operator, commutator, d_operator, parse
from malcev.operators import GOp, LOp, OperatorSum, RightMul, as_operator

x, y, z = XYZ.vars()
J = parse("J(x,y,z)")


def test_right_mul_power():
    assert apply_operator(J, RightMul(x, 2)) == J * x * x


def test_l_operator_symmetric():
    assert apply_operator(J, LOp(x, y)) == (J * x * y + J * y * x) * Fraction(1, 2)
    assert apply_operator(J, LOp(x, y)) == apply_operator(J, LOp(y, x))


def test_sum_and_composition():
    op = as_operator(RightMul(x)) * as_operator(RightMul(y)) - RightMul(z)
    assert apply_operator(J, op) == J * x * y - J * z
    assert apply_operator(J, as_operator(RightMul(x)) ** 2) == J * x * x
    assert apply_operator(J, as_operator(RightMul(x)) * 3) == (J * x) * 3


def test_commutator():
    c = commutator(RightMul(x), RightMul(y))
    assert apply_operator(J, c) == J * x * y - J * y * x


def test_d_operator_expansion():
    expected = (apply_operator(J, LOp(z * y, z * y)) + apply_operator(apply_operator(J, LOp(y, y)), LOp(z, z))
                - apply_operator(J, LOp(y, z, 2)))
    assert apply_operator(J, d_operator(z, y)) == expected


def test_g_operator():
    assert apply_operator(J, GOp()) == parse("G(J(x,y,z),x,y,z)")


def test_rejects_zero_and_bad_input():
    with pytest.raises(ValueError):
        RightMul(XYZ.zero())
    with pytest.raises(TypeError):
        as_operator("x")
    assert repr(OperatorSum([])) == "0"
