from fractions import Fraction

import pytest

from malcev import (XYZ, AlphabetError, MultiDegree, canonicalize, get_alphabet, gfunc, jacobian,
                    multidegree_of, parse)
from malcev.terms import homogeneous_components, monomials, substitute, variables_of

x, y, z = XYZ.vars()


def test_square_vanishes():
    assert (x * x).is_zero()
    assert ((x * y) * (x * y)).is_zero()


def test_scalar_and_product():
    assert (2 * (x * y)) == (x * y) * Fraction(2)
    assert (x * y) / 2 == (x * y) * Fraction(1, 2)


def test_jacobian_definition():
    assert jacobian(x, y, z) == (x * y) * z + (z * x) * y + (y * z) * x
    assert jacobian(x, y, z) == jacobian(y, z, x) == -jacobian(y, x, z)


def test_gfunc_matches_parser():
    t = parse("J(x,y,z)")
    assert gfunc(t, x, y, z) == parse("G(J(x,y,z),x,y,z)")


def test_alphabets_do_not_mix():
    other = get_alphabet(("a", "b"))
    with pytest.raises(AlphabetError):
        x + other.var("a")
    assert get_alphabet(("a", "b")) is other


def test_multidegree():
    assert multidegree_of(parse("x y x z")) == MultiDegree((2, 1, 1))
    assert MultiDegree((2, 1, 1)).total == 4
    mixed = parse("x y + x y z")
    assert set(homogeneous_components(mixed)) == {MultiDegree((1, 1, 0)), MultiDegree((1, 1, 1))}


@pytest.mark.parametrize("md,count", [((1, 0, 0), 1), ((2, 0, 0), 0), ((1, 1, 0), 1),
                                      ((1, 1, 1), 3), ((2, 1, 0), 1), ((2, 1, 1), 6)])
def test_monomial_counts(md, count):
    assert len(monomials(XYZ, md)) == count


def test_substitute_and_variables():
    e = parse("x y z")
    assert variables_of(e) == {"x", "y", "z"}
    assert substitute(e, {"z": x}, XYZ) == parse("x y x")
    assert substitute(e, {"x": y * z}, XYZ) == parse("(y z) y z")


def test_canonicalize_zero_sign():
    assert canonicalize(("x", "y"), XYZ, 0).is_zero()
    assert canonicalize(("x", "x")).is_zero()
