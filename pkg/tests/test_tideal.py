import pytest

from malcev import XYZ, check_identity, consequence_space, is_consequence, multilinearize, parse
from malcev.tideal import (consequence_rank, is_consequence_restituted, malcev_identity,
                           tideal_dim, _generate)


def test_generator_counts():
    assert len(list(_generate(4))) == 12
    assert len(list(_generate(5))) == 180


def test_consequence_ranks():
    assert consequence_rank(4) == 5
    assert consequence_rank(5) == 61
    assert len(consequence_space(3)) == 0


def test_jacobi_rejected():
    res = is_consequence(parse("J(x,y,z)"))
    assert not res.consequence
    assert res.refutation.kind == "m7"


def test_malcev_identity_accepted_with_certificate():
    (lin,) = multilinearize(malcev_identity(XYZ))
    res = is_consequence(lin)
    assert res.consequence
    assert res.certificate.replay(lin.element.alphabet) == lin.element


def test_non_identity_refuted_by_lie():
    res = is_consequence(parse("x y z"))
    assert not res.consequence and res.refutation.kind == "lie"


def test_rejects_non_multilinear():
    with pytest.raises(ValueError):
        is_consequence(parse("x y x"))


def test_restituted_agrees_with_multilinear():
    e = parse("J(x,y,x z) - J(x,y,z) x")
    assert is_consequence_restituted(e).consequence
    assert all(r.consequence for r in check_identity(e))
    assert not is_consequence_restituted(parse("J(x,y,z) x")).consequence


@pytest.mark.parametrize("d,expected", [((2, 1, 1), 4), ((2, 2, 1), 8)])
def test_tideal_dim_matches_model(d, expected):
    assert tideal_dim(d) == expected
