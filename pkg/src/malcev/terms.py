"""Free anticommutative algebra over a finite alphabet.

Monomials are canonical binary trees: at every internal node the left child
is strictly smaller than the right one in the monomial order (total degree
first, then left subtree, then right subtree, leaves by alphabet position).
Canonical trees are interned per alphabet, so equality is identity.

Elements are sparse rational combinations of monomials.  Nothing here knows
about the Malcev identity; relations are imposed elsewhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Iterator

__all__ = [
    "AlphabetError",
    "Alphabet",
    "get_alphabet",
    "XYZ",
    "Monomial",
    "Element",
    "MultiDegree",
    "MIXED",
    "EMPTY",
    "canonicalize",
    "add",
    "scale",
    "mul",
    "jacobian",
    "gfunc",
    "multidegree_of",
    "monomials",
    "right_normed",
    "left_normed",
    "substitute",
    "transport",
    "variables_of",
    "homogeneous_components",
]


class AlphabetError(ValueError):
    """Unknown variable, or elements over different alphabets were combined."""


class Alphabet:
    """An ordered finite set of variable names.

    Use :func:`get_alphabet`; alphabets with equal names are the same object,
    and each owns the intern table for its monomials.
    """

    __slots__ = ("names", "index", "_interned", "_leaves", "_by_degree")

    def __init__(self, names: tuple[str, ...]):
        if len(set(names)) != len(names):
            raise AlphabetError(f"repeated variable in {names!r}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self._interned: dict = {}
        self._by_degree: dict = {}
        self._leaves = tuple(Monomial._leaf(self, i) for i in range(len(names)))

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(self.names)})"

    def __reduce__(self):
        return (get_alphabet, (self.names,))

    def __contains__(self, name) -> bool:
        return name in self.index

    def leaf(self, name: str) -> "Monomial":
        try:
            return self._leaves[self.index[name]]
        except KeyError:
            raise AlphabetError(f"variable {name!r} not in {self!r}") from None

    def var(self, name: str) -> "Element":
        return Element(self, {self.leaf(name): Fraction(1)})

    def vars(self) -> tuple["Element", ...]:
        return tuple(self.var(n) for n in self.names)

    def zero(self) -> "Element":
        return Element(self, {})

    def zero_degree(self) -> "MultiDegree":
        return MultiDegree((0,) * len(self.names))


_ALPHABETS: dict[tuple[str, ...], Alphabet] = {}


def get_alphabet(names: Iterable[str]) -> Alphabet:
    names = tuple(names)
    alpha = _ALPHABETS.get(names)
    if alpha is None:
        alpha = _ALPHABETS.setdefault(names, Alphabet(names))
    return alpha



class MultiDegree(tuple):
    """Per-variable leaf counts."""

    __slots__ = ()

    @property
    def total(self) -> int:
        return sum(self)

    def __add__(self, other):
        return MultiDegree(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return MultiDegree(a - b for a, b in zip(self, other))

    def __le__(self, other):
        return all(a <= b for a, b in zip(self, other))

    def __repr__(self):
        return f"MultiDegree{tuple(self)!r}"


# Distinguished results of multidegree_of.
MIXED = "mixed"
EMPTY = "empty"


class Monomial:
    """Interned canonical anticommutative tree.  Do not construct directly."""

    __slots__ = ("alphabet", "var", "left", "right", "degree", "multidegree",
                 "key", "_memo", "__weakref__")

    def __init__(self):
        raise TypeError("use Alphabet.leaf or Monomial.product")

    @classmethod
    def _leaf(cls, alphabet: Alphabet, i: int) -> "Monomial":
        m = object.__new__(cls)
        m.alphabet = alphabet
        m.var = i
        m.left = m.right = None
        m.degree = 1
        md = [0] * len(alphabet.names)
        md[i] = 1
        m.multidegree = MultiDegree(md)
        m.key = (1, i)
        m._memo = {}
        return m

    @staticmethod
    def product(a: "Monomial", b: "Monomial") -> tuple[int, "Monomial | None"]:
        """Canonical form of the tree (a.b): returns (sign, monomial), or (0, None)."""
        if a is b:
            return 0, None
        if a.key > b.key:
            a, b, sign = b, a, -1
        else:
            sign = 1
        table = a.alphabet._interned
        k = (id(a), id(b))
        m = table.get(k)
        if m is None:
            m = object.__new__(Monomial)
            m.alphabet = a.alphabet
            m.var = None
            m.left = a
            m.right = b
            m.degree = a.degree + b.degree
            m.multidegree = a.multidegree + b.multidegree
            m.key = (m.degree, a.key, b.key)
            m._memo = {}
            # setdefault keeps insertion idempotent under concurrent callers
            m = table.setdefault(k, m)
        return sign, m

    @property
    def is_leaf(self) -> bool:
        return self.var is not None

    def __lt__(self, other: "Monomial") -> bool:
        return self.key < other.key

    def __le__(self, other: "Monomial") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "Monomial") -> bool:
        return self.key > other.key

    def __ge__(self, other: "Monomial") -> bool:
        return self.key >= other.key

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other

    def __reduce__(self):
        return (_rebuild_monomial, (self.alphabet.names, self.raw()))

    def raw(self):
        """Nested-tuple form with variable names at the leaves."""
        if self.var is not None:
            return self.alphabet.names[self.var]
        return (self.left.raw(), self.right.raw())

    def leaves(self) -> Iterator[int]:
        if self.var is not None:
            yield self.var
        else:
            yield from self.left.leaves()
            yield from self.right.leaves()

    def __str__(self):
        return format_monomial(self)

    def __repr__(self):
        return f"Monomial({format_monomial(self)})"


def _rebuild_monomial(names, raw):
    e = canonicalize(raw, get_alphabet(names))
    ((m, _),) = e.terms.items()
    return m


def format_monomial(m: Monomial) -> str:
    """Left-normed rendering: ((x y) z) prints as ``x y z``."""
    if m.var is not None:
        return m.alphabet.names[m.var]
    right = format_monomial(m.right)
    if m.right.var is None:
        right = f"({right})"
    return f"{format_monomial(m.left)} {right}"


def _coerce_q(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"not an exact rational: {q!r}")


class Element:
    """Sparse rational combination of canonical monomials.

    ``a * b`` is the algebra product when both are Elements and scalar
    multiplication when one side is a rational number.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: dict | None = None):
        self.alphabet = alphabet
        self.terms = {} if terms is None else terms

    @classmethod
    def from_monomial(cls, m: Monomial, coeff=1) -> "Element":
        coeff = _coerce_q(coeff)
        return cls(m.alphabet, {m: coeff} if coeff else {})

    def _check(self, other: "Element"):
        if self.alphabet is not other.alphabet:
            raise AlphabetError(f"{self.alphabet!r} vs {other.alphabet!r}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.items())

    def items(self):
        """Terms sorted by the monomial order."""
        return sorted(self.terms.items(), key=lambda t: t[0].key)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alphabet is other.alphabet and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alphabet, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        try:
            return scale(other, self)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Element):
            return mul(other, self)
        try:
            return scale(other, self)
        except TypeError:
            return NotImplemented

    def __truediv__(self, q):
        return scale(1 / _coerce_q(q), self)

    @property
    def multidegree(self):
        return multidegree_of(self)

    def degree(self) -> int:
        """Largest total degree of a term; 0 for the zero element."""
        return max((m.degree for m in self.terms), default=0)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)})"

    def __reduce__(self):
        return (_rebuild_element,
                (self.alphabet.names, [(m.raw(), c) for m, c in self.items()]))


def _rebuild_element(names, raw_terms):
    alpha = get_alphabet(names)
    out = alpha.zero()
    for raw, c in raw_terms:
        out = out + canonicalize(raw, alpha, c)
    return out


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    parts = []
    for m, c in e.items():
        mono = format_monomial(m)
        if c == 1:
            parts.append(("+", mono))
        elif c == -1:
            parts.append(("-", mono))
        elif c > 0:
            parts.append(("+", f"{c}*{mono}"))
        else:
            parts.append(("-", f"{-c}*{mono}"))
    text = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


XYZ = get_alphabet(("x", "y", "z"))


# ----------------------------------------------------------------------------
# operations


def canonicalize(raw, alphabet: Alphabet = XYZ, sign=1) -> Element:
    """Element equal to the raw tree modulo anticommutativity.

    ``raw`` is a variable name or a nested pair ``(left, right)``.
    """
    sign = _coerce_q(sign)

    def walk(t):
        if isinstance(t, str):
            return 1, alphabet.leaf(t)
        if isinstance(t, Monomial):
            return 1, t
        left, right = t
        sl, ml = walk(left)
        if ml is None:
            return 0, None
        sr, mr = walk(right)
        if mr is None:
            return 0, None
        s, m = Monomial.product(ml, mr)
        return s * sl * sr, m

    s, m = walk(raw)
    if m is None or not sign:
        return alphabet.zero()
    return Element(alphabet, {m: sign * s})


def add(a: Element, b: Element) -> Element:
    a._check(b)
    if len(a.terms) < len(b.terms):
        a, b = b, a
    out = dict(a.terms)
    for m, c in b.terms.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return Element(a.alphabet, out)


def scale(q, a: Element) -> Element:
    q = _coerce_q(q)
    if not q:
        return a.alphabet.zero()
    return Element(a.alphabet, {m: q * c for m, c in a.terms.items()})


def mul(a: Element, b: Element) -> Element:
    a._check(b)
    out: dict = {}
    product = Monomial.product
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s, m = product(ma, mb)
            if s:
                v = out.get(m, 0) + (ca * cb if s > 0 else -ca * cb)
                if v:
                    out[m] = v
                else:
                    del out[m]
    return Element(a.alphabet, out)


def jacobian(a: Element, b: Element, c: Element) -> Element:
    """J(a,b,c) = (ab)c + (ca)b + (bc)a."""
    return mul(mul(a, b), c) + mul(mul(c, a), b) + mul(mul(b, c), a)


def gfunc(a: Element, b: Element, c: Element, d: Element) -> Element:
    """G(a,b,c,d) = J(ab,c,d) - bJ(a,c,d) - J(b,c,d)a."""
    return (jacobian(mul(a, b), c, d)
            - mul(b, jacobian(a, c, d))
            - mul(jacobian(b, c, d), a))


def left_normed(*factors: Element) -> Element:
    """(((f1 f2) f3) ... fn)."""
    return reduce(mul, factors)


def right_normed(*factors: Element) -> Element:
    return reduce(lambda acc, f: mul(f, acc), reversed(factors))


def multidegree_of(e: Element):
    """Common multidegree of all terms, MIXED, or EMPTY for zero."""
    degrees = {m.multidegree for m in e.terms}
    if not degrees:
        return EMPTY
    if len(degrees) > 1:
        return MIXED
    return degrees.pop()


def homogeneous_components(e: Element) -> dict[MultiDegree, Element]:
    parts: dict = {}
    for m, c in e.terms.items():
        parts.setdefault(m.multidegree, {})[m] = c
    return {d: Element(e.alphabet, t) for d, t in sorted(parts.items())}


def _sub_degrees(md: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for d in itertools.product(*(range(k + 1) for k in md)):
        yield d


def monomials(alphabet: Alphabet, md) -> list[Monomial]:
    """All canonical monomials of multidegree ``md``, sorted by the order."""
    md = MultiDegree(md)
    if len(md) != len(alphabet):
        raise AlphabetError(f"multidegree {tuple(md)} does not fit {alphabet!r}")
    cache = alphabet._by_degree
    hit = cache.get(md)
    if hit is not None:
        return hit
    total = md.total
    if total <= 0:
        out: list = []
    elif total == 1:
        out = [alphabet._leaves[md.index(1)]]
    else:
        found = set()
        for d1 in _sub_degrees(md):
            t1 = sum(d1)
            if t1 == 0 or t1 == total:
                continue
            d2 = md - d1
            if t1 > total - t1:
                continue
            left = monomials(alphabet, d1)
            right = monomials(alphabet, d2)
            for a in left:
                for b in right:
                    s, m = Monomial.product(a, b)
                    if s:
                        found.add(m)
        out = sorted(found, key=lambda m: m.key)
    cache[md] = out
    return out


def substitute(e: Element, images: dict, alphabet: Alphabet | None = None) -> Element:
    """Algebra homomorphism sending each variable name to an Element.

    Variables missing from ``images`` map to the same-named variable of the
    target alphabet, which defaults to that of the images.
    """
    if alphabet is None:
        alphabet = next(iter(images.values())).alphabet if images else e.alphabet
    names = e.alphabet.names
    for n, img in images.items():
        if img.alphabet is not alphabet:
            raise AlphabetError(f"image of {n!r} lives over {img.alphabet!r}")
    cache: dict = {}

    def walk(m: Monomial) -> Element:
        hit = cache.get(m)
        if hit is None:
            if m.var is not None:
                n = names[m.var]
                hit = images[n] if n in images else alphabet.var(n)
            else:
                hit = mul(walk(m.left), walk(m.right))
            cache[m] = hit
        return hit

    out = alphabet.zero()
    for m, c in e.terms.items():
        out = out + scale(c, walk(m))
    return out


def transport(e: Element, alphabet: Alphabet) -> Element:
    """The same Element over a larger alphabet containing all its variables."""
    if e.alphabet is alphabet:
        return e
    return substitute(e, {n: alphabet.var(n) for n in variables_of(e)}, alphabet)


def variables_of(e: Element) -> set[str]:
    names = e.alphabet.names
    return {names[i] for m in e.terms for i in m.leaves()}
