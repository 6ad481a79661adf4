from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from malcev.linalg import ModEchelon, PRIMES, SparseRationalMatrix, int_rank, rank, rational_reconstruct


def test_trivial_ranks():
    assert rank(SparseRationalMatrix.from_dense([[0, 0], [0, 0]])) == 0
    assert rank(SparseRationalMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(SparseRationalMatrix.from_dense([[1, 2], [2, 4]])) == 1


def _dense_rank(rows):
    m = [[Fraction(v) for v in r] for r in rows]
    r = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


@settings(max_examples=200)
@given(st.lists(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=4, max_size=4),
                min_size=1, max_size=6))
def test_rank_matches_dense_elimination(rows):
    m = SparseRationalMatrix.from_dense(rows)
    m.check()
    assert rank(m) == _dense_rank(rows)


def test_int_rank_on_dicts():
    assert int_rank([{0: 2, 1: 4}, {0: 1, 1: 2}, {2: 5}]) == 2


def test_rational_reconstruction():
    p = PRIMES[0]
    q = Fraction(-7, 12)
    assert rational_reconstruct(q.numerator * pow(q.denominator, -1, p) % p, p) == q


def test_mod_echelon_solve():
    p = PRIMES[0]
    ech = ModEchelon(p)
    assert ech.insert({0: 1, 1: 1})
    assert ech.insert({1: 1, 2: 1})
    assert not ech.insert({0: 1, 2: p - 1})
    ok, combo = ech.solve({0: 1, 2: p - 1})
    assert ok and combo
    ok, _ = ech.solve({3: 1})
    assert not ok
