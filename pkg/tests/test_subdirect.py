import pytest

from malcev import XYZ, apply_operator, dim_J, dim_M, jspan_rank, lie_dim, parse, zero_in_M
from malcev.operators import LOp
from malcev.subdirect import joint_image, rank_of, zero_test

x, y, z = XYZ.vars()
J = parse("J(x,y,z)")


def test_jacobian_is_not_zero():
    assert not zero_in_M(J)


def test_documented_zeros():
    assert zero_in_M(apply_operator(J, LOp(x, x * y)))
    assert zero_in_M(apply_operator(J, LOp(y, z * y)))
    assert zero_in_M(parse("J(x,y,z).G - 6*J(x,y,z).L(x,z y)"))


def test_malcev_identity_holds():
    assert zero_in_M(parse("J(x,y,x z) - J(x,y,z) x"))


@pytest.mark.parametrize("d,m", [((1, 0, 0), 1), ((2, 0, 0), 0), ((1, 1, 1), 3),
                                 ((2, 1, 1), 4), ((3, 1, 1), 5), ((2, 2, 1), 8),
                                 ((2, 2, 2), 18)])
def test_dim_M(d, m):
    assert dim_M(d) == m


def test_dim_J_and_jspan():
    assert (dim_M((1, 1, 1)), lie_dim((1, 1, 1)), dim_J((1, 1, 1))) == (3, 2, 1)
    for d in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (2, 2, 2)]:
        assert jspan_rank(d) == dim_J(d)


def test_full_mode_agrees():
    assert dim_M((2, 1, 1), "full") == 4
    assert rank_of([x * y * z, y * z * x, z * x * y, parse("J(x,y,z)")]) == 3


def test_zero_test_reports_mode():
    res = zero_test(x * y, "randomized", seed=1)
    assert not res.zero


def test_requires_xyz():
    from malcev import get_alphabet
    with pytest.raises(ValueError):
        joint_image(get_alphabet(("a", "b")).var("a"))
