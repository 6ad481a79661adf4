import pytest

from malcev import XYZ, IdentityExpr, delta, multilinearize, parse
from malcev.linearize import collapse_clones, polarization_factor

x, y, z = XYZ.vars()


def test_delta_counts_occurrences():
    e = parse("x y x")
    d = delta(e, "x", 1, "w")
    assert str(d) == str(parse("w y x + x y w", d.alphabet))
    assert delta(e, "x", 0, "w") == parse("x y x", delta(e, "x", 0, "w").alphabet)


def test_delta_with_element():
    d = delta(parse("x y x"), "x", 2, y * z)
    assert d.alphabet is XYZ
    assert d == parse("(y z) y (y z)")


def test_delta_errors():
    with pytest.raises(ValueError):
        delta(parse("x y"), "x", 2, "w")
    with pytest.raises(ValueError):
        delta(parse("x y"), "x", 1, "y")


def test_multilinearize_recovers_factorial_multiple():
    e = parse("J(x,y,x z) - J(x,y,z) x")
    (lin,) = multilinearize(e)
    assert lin.is_multilinear() and lin.degree == 4
    ident = IdentityExpr.of(e)
    assert polarization_factor(ident) == 2
    assert collapse_clones(lin.element, XYZ) == e * 2


def test_already_multilinear_unchanged():
    e = parse("x y z")
    assert multilinearize(e)[0].element == e


def test_requires_multihomogeneous():
    with pytest.raises(ValueError):
        IdentityExpr.of(parse("x y + x y z"))
