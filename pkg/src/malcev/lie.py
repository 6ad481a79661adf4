"""Free Lie projection: commutator expansion into the free associative algebra.

Associative words are packed into Python ints: a sentinel bit followed by a
fixed number of bits per letter.  Numeric order on packed words is then
length-then-lexicographic order, which is also the column order used by the
joint-image matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd

from .terms import Alphabet, Element, Monomial, monomials, MultiDegree

__all__ = [
    "AssocPoly",
    "commutator_embed",
    "lie_is_zero",
    "lie_dim",
    "witt_dim",
    "mobius",
    "letter_bits",
]


def letter_bits(alphabet: Alphabet) -> int:
    """Bits per packed letter (2 for {x, y, z})."""
    return max(1, (len(alphabet) - 1).bit_length())


def pack_word(word, bits: int) -> int:
    code = 1
    for letter in word:
        code = (code << bits) | letter
    return code


def unpack_word(code: int, bits: int) -> tuple[int, ...]:
    letters = []
    mask = (1 << bits) - 1
    while code > 1:
        letters.append(code & mask)
        code >>= bits
    return tuple(reversed(letters))


class AssocPoly:
    """Sparse combination of associative words with rational coefficients."""

    __slots__ = ("alphabet", "bits", "terms")

    def __init__(self, alphabet: Alphabet, terms: dict):
        self.alphabet = alphabet
        self.bits = letter_bits(alphabet)
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AssocPoly):
            return NotImplemented
        return self.alphabet is other.alphabet and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        return AssocPoly(self.alphabet, _add(self.terms, other.terms, 1))

    def __sub__(self, other):
        return AssocPoly(self.alphabet, _add(self.terms, other.terms, -1))

    def __mul__(self, other):
        if isinstance(other, AssocPoly):
            return AssocPoly(self.alphabet, _concat(self.terms, other.terms, self.bits))
        return AssocPoly(self.alphabet, {w: other * c for w, c in self.terms.items()} if other else {})

    __rmul__ = __mul__

    def words(self) -> dict[tuple[str, ...], object]:
        names = self.alphabet.names
        return {tuple(names[i] for i in unpack_word(w, self.bits)): c
                for w, c in sorted(self.terms.items())}

    def __repr__(self):
        if not self.terms:
            return "AssocPoly(0)"
        body = " + ".join(f"{c}*{''.join(w)}" for w, c in self.words().items())
        return f"AssocPoly({body})"


def _add(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, 0) + sign * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def _concat(a: dict, b: dict, bits: int) -> dict:
    out: dict = {}
    for wb, cb in b.items():
        shift = (wb.bit_length() - 1)
        tail = wb ^ (1 << shift)
        for wa, ca in a.items():
            w = (wa << shift) | tail
            v = out.get(w, 0) + ca * cb
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def _embed_monomial(m: Monomial, bits: int) -> dict:
    memo = m._memo
    hit = memo.get("lie")
    if hit is not None:
        return hit
    if m.var is not None:
        out = {(1 << bits) | m.var: 1}
    else:
        left = _embed_monomial(m.left, bits)
        right = _embed_monomial(m.right, bits)
        out = _concat(left, right, bits)
        for w, c in _concat(right, left, bits).items():
            v = out.get(w, 0) - c
            if v:
                out[w] = v
            else:
                del out[w]
    memo["lie"] = out
    return out


def embed_terms(e: Element) -> dict:
    """Packed-word coordinates of the commutator expansion of ``e``."""
    bits = letter_bits(e.alphabet)
    out: dict = {}
    for m, c in e.terms.items():
        for w, v in _embed_monomial(m, bits).items():
            s = out.get(w, 0) + c * v
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def commutator_embed(e: Element) -> AssocPoly:
    """Expand every product ab as ab - ba, recursively."""
    return AssocPoly(e.alphabet, embed_terms(e))


def lie_is_zero(e: Element) -> bool:
    return not embed_terms(e)


def lie_dim(d, alphabet: Alphabet | None = None) -> int:
    """Dimension of the multidegree-d component of the free Lie algebra.

    Computed as the rank of the commutator expansions of all canonical
    monomials of that multidegree.
    """
    from .linalg import int_rank
    from .terms import XYZ

    alphabet = alphabet or XYZ
    d = MultiDegree(d)
    if d.total < 1:
        raise ValueError("multidegree must have total degree >= 1")
    bits = letter_bits(alphabet)
    rows = [_embed_monomial(m, bits) for m in monomials(alphabet, d)]
    return int_rank(rows)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(n)
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def witt_dim(d) -> int:
    """Witt's necklace count for the free Lie algebra in multidegree d."""
    d = tuple(d)
    n = sum(d)
    if n < 1:
        raise ValueError("multidegree must have total degree >= 1")
    g = 0
    for k in d:
        g = gcd(g, k)
    total = Fraction(0)
    for j in range(1, g + 1):
        if g % j:
            continue
        mu = mobius(j)
        if not mu:
            continue
        count = factorial(n // j)
        for k in d:
            count //= factorial(k // j)
        total += mu * count
    total /= n
    assert total.denominator == 1
    return int(total)
