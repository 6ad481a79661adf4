"""Randomized algebraic invariants of the core data structures."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from malcev import (XYZ, canonicalize, commutator_embed, eval_generic, format_element, m7_mul,
                    mul, parse)
from malcev.terms import Monomial

from conftest import coefficients, elements, trees

CASES = settings(max_examples=1000)


def _same_tree(t):
    if isinstance(t, str):
        return t
    return (_same_tree(t[0]), _same_tree(t[1]))


@CASES
@given(trees(), coefficients)
def test_canonicalize_idempotent(t, c):
    e = canonicalize(t, XYZ, c)
    again = XYZ.zero()
    for m, coeff in e.items():
        again = again + canonicalize(m, XYZ, coeff)
    assert again == e
    assert canonicalize(_same_tree(t), XYZ, c) == e


@CASES
@given(trees(), trees())
def test_canonicalize_antisymmetric(a, b):
    assert canonicalize((a, b)) == -canonicalize((b, a))


@CASES
@given(elements(), elements(), elements(), coefficients)
def test_mul_bilinear(a, b, c, k):
    assert mul(a + b, c) == mul(a, c) + mul(b, c)
    assert mul(a, b + c) == mul(a, b) + mul(a, c)
    assert mul(a * k, b) == mul(a, b) * k == mul(a, b * k)


@CASES
@given(elements(), elements())
def test_mul_anticommutative(a, b):
    assert mul(a, b) == -mul(b, a)
    assert mul(a, a).is_zero()


@CASES
@given(elements(max_leaves=5), elements(max_leaves=5))
def test_commutator_embed_homomorphism(a, b):
    ea, eb = commutator_embed(a), commutator_embed(b)
    assert commutator_embed(a * b) == ea * eb - eb * ea
    assert commutator_embed(a + b) == ea + eb


@CASES
@given(elements(max_terms=2, max_leaves=3), elements(max_terms=2, max_leaves=3))
def test_eval_generic_homomorphism(a, b):
    assert eval_generic(a * b) == m7_mul(eval_generic(a), eval_generic(b))
    assert eval_generic(a + b) == eval_generic(a) + eval_generic(b)


@CASES
@given(elements(max_terms=5))
def test_parse_format_round_trip(e):
    text = format_element(e)
    back = parse(text, XYZ)
    assert back == e
    assert format_element(back) == text


@CASES
@given(trees())
def test_monomial_key_determines_equality(t):
    e = canonicalize(t)
    for m, c in e.items():
        assert isinstance(m, Monomial)
        assert c in (Fraction(1), Fraction(-1))
