"""Operators acting on the right of Elements.

Primitive factors are right multiplication R_a, L_{a,b} = (R_a R_b + R_b R_a)/2
and G: t -> G(t, x, y, z), each with a positive power.  A word composes its
factors left to right; an :class:`OperatorSum` is a rational combination of
words, which is enough for commutators and d(z, y).
"""

from __future__ import annotations

from fractions import Fraction

from .terms import AlphabetError, Element, gfunc, mul

__all__ = [
    "RightMul",
    "LOp",
    "GOp",
    "OperatorWord",
    "OperatorSum",
    "as_operator",
    "apply_operator",
    "commutator",
    "d_operator",
]


def _nonzero(e: Element, what: str) -> Element:
    if not isinstance(e, Element):
        raise TypeError(f"{what} operand must be an Element, got {type(e).__name__}")
    if not e.terms:
        raise ValueError(f"{what} operand is zero")
    return e


def _power(n) -> int:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"operator power must be a positive integer, got {n!r}")
    return n


class RightMul:
    __slots__ = ("a", "power")

    def __init__(self, a: Element, power: int = 1):
        self.a = _nonzero(a, "R")
        self.power = _power(power)

    def once(self, e: Element) -> Element:
        return mul(e, self.a)

    def __repr__(self):
        return f"R({self.a})" + (f"^{self.power}" if self.power > 1 else "")


class LOp:
    __slots__ = ("a", "b", "power")

    def __init__(self, a: Element, b: Element, power: int = 1):
        self.a = _nonzero(a, "L")
        self.b = _nonzero(b, "L")
        self.power = _power(power)

    def once(self, e: Element) -> Element:
        return (mul(mul(e, self.a), self.b) + mul(mul(e, self.b), self.a)) * Fraction(1, 2)

    def __repr__(self):
        return f"L({self.a}, {self.b})" + (f"^{self.power}" if self.power > 1 else "")


class GOp:
    __slots__ = ("power",)

    def __init__(self, power: int = 1):
        self.power = _power(power)

    def once(self, e: Element) -> Element:
        alpha = e.alphabet
        if not all(n in alpha for n in "xyz"):
            raise AlphabetError(f"G needs x, y, z in {alpha!r}")
        return gfunc(e, alpha.var("x"), alpha.var("y"), alpha.var("z"))

    def __repr__(self):
        return "G" + (f"^{self.power}" if self.power > 1 else "")


PRIMITIVES = (RightMul, LOp, GOp)
OperatorWord = tuple  # a tuple of primitive factors, applied left to right


class OperatorSum:
    """Rational combination of operator words."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = [(Fraction(c), tuple(w)) for c, w in terms if c]

    def __add__(self, other):
        other = as_operator(other)
        return OperatorSum(self.terms + other.terms)

    def __neg__(self):
        return OperatorSum([(-c, w) for c, w in self.terms])

    def __sub__(self, other):
        return self + (-as_operator(other))

    def __mul__(self, other):
        """Composition (self first, then other) or scaling by a rational."""
        if isinstance(other, (int, Fraction)):
            return OperatorSum([(c * other, w) for c, w in self.terms])
        other = as_operator(other)
        return OperatorSum([(c1 * c2, w1 + w2)
                            for c1, w1 in self.terms for c2, w2 in other.terms])

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return as_operator(other) * self

    def __pow__(self, n: int):
        out = as_operator(())
        for _ in range(_power(n)):
            out = out * self
        return out

    def __repr__(self):
        return " + ".join(f"{c}*{'.'.join(map(repr, w)) or 'id'}" for c, w in self.terms) or "0"


def as_operator(op) -> OperatorSum:
    if isinstance(op, OperatorSum):
        return op
    if isinstance(op, PRIMITIVES):
        return OperatorSum([(1, (op,))])
    if isinstance(op, (tuple, list)):
        if not all(isinstance(f, PRIMITIVES) for f in op):
            raise TypeError("operator words hold RightMul, LOp or GOp factors")
        return OperatorSum([(1, tuple(op))])
    raise TypeError(f"not an operator: {op!r}")


def _apply_word(e: Element, word) -> Element:
    for f in word:
        for _ in range(f.power):
            if not e.terms:
                return e
            e = f.once(e)
    return e


def apply_operator(e: Element, op) -> Element:
    """Apply a factor, a word or an OperatorSum to ``e`` on the right."""
    total = e.alphabet.zero()
    for c, word in as_operator(op).terms:
        total = total + _apply_word(e, word) * c
    return total


def commutator(s1, s2) -> OperatorSum:
    """[S1, S2] = S1 S2 - S2 S1."""
    s1, s2 = as_operator(s1), as_operator(s2)
    return s1 * s2 - s2 * s1


def d_operator(z: Element, y: Element) -> OperatorSum:
    """d(z, y) = L_{zy,zy} + L_{y,y} L_{z,z} - L_{y,z}^2."""
    zy = mul(z, y)
    return (as_operator(LOp(zy, zy))
            + as_operator((LOp(y, y), LOp(z, z)))
            - as_operator(LOp(y, z, 2)))

