"""Partial and full polarization of homogeneous identities.

``delta(e, a, i, b)`` sums, over every way of choosing exactly ``i``
occurrences of the variable ``a``, the result of replacing those occurrences
by ``b``.  Full multilinearization replaces a variable of degree k by clones
a#1, ..., a#k, one occurrence each, summed over all assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .terms import (
    Alphabet,
    AlphabetError,
    Element,
    MultiDegree,
    get_alphabet,
    mul,
    multidegree_of,
    substitute,
    transport,
    variables_of,
)

__all__ = ["IdentityExpr", "delta", "multilinearize", "clone_name", "collapse_clones",
           "polarization_factor"]


def clone_name(var: str, i: int) -> str:
    return f"{var}#{i}"


def _union_alphabet(*alphas: Alphabet, extra=()) -> Alphabet:
    names: list[str] = []
    for a in alphas:
        names.extend(n for n in a.names if n not in names)
    names.extend(n for n in extra if n not in names)
    return get_alphabet(names)


def delta(e: Element, a: str, i: int, b) -> Element:
    """Replace exactly ``i`` occurrences of ``a`` by ``b`` in all possible ways.

    ``b`` is a variable name or an Element.  A variable name must be fresh
    for ``e``; an Element may share variables with it.
    """
    if i < 0:
        raise ValueError("i must be non-negative")
    if a not in e.alphabet:
        raise AlphabetError(f"variable {a!r} not in {e.alphabet!r}")
    ai = e.alphabet.index[a]
    for m in e.terms:
        if m.multidegree[ai] < i:
            raise ValueError(f"{m} has fewer than {i} occurrences of {a}")
    if isinstance(b, str):
        if b in variables_of(e):
            raise ValueError(f"replacement variable {b!r} occurs in the expression")
        target = _union_alphabet(e.alphabet, extra=(b,))
        b_el = target.var(b)
    else:
        target = _union_alphabet(e.alphabet, b.alphabet)
        b_el = transport(b, target)
    zero = target.zero()
    names = e.alphabet.names
    cache: dict = {}

    def walk(m):
        """{j: sum over choices of j replaced occurrences}, j <= i."""
        hit = cache.get(m)
        if hit is not None:
            return hit
        if m.var is not None:
            out = {0: target.var(names[m.var])}
            if m.var == ai and i >= 1:
                out[1] = b_el
        else:
            left, right = walk(m.left), walk(m.right)
            out = {}
            for j1, e1 in left.items():
                for j2, e2 in right.items():
                    j = j1 + j2
                    if j <= i:
                        out[j] = out.get(j, zero) + mul(e1, e2)
        cache[m] = out
        return out

    total = zero
    for m, c in e.terms.items():
        part = walk(m).get(i)
        if part is not None:
            total = total + part * c
    return total


@dataclass(frozen=True)
class IdentityExpr:
    """A multihomogeneous element read as the identity ``element = 0``."""

    element: Element
    multiplicities: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, e: Element) -> "IdentityExpr":
        md = multidegree_of(e)
        if not isinstance(md, MultiDegree):
            raise ValueError(f"identity is not multihomogeneous ({md})")
        mult = tuple((n, k) for n, k in zip(e.alphabet.names, md) if k)
        return cls(e, mult)

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.multiplicities)

    def is_multilinear(self) -> bool:
        return all(k == 1 for _, k in self.multiplicities)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.multiplicities)

    def __str__(self):
        return f"{self.element} = 0"


def multilinearize(ident: IdentityExpr | Element) -> list[IdentityExpr]:
    """Full polarization; each variable of degree k > 1 becomes v#1..v#k.

    Returns a single identity (the full linearization is one element), or the
    input unchanged when it is already multilinear.  Setting every clone back
    to its original recovers prod(k!) times the input.
    """
    if isinstance(ident, Element):
        ident = IdentityExpr.of(ident)
    if ident.is_multilinear():
        return [ident]
    e = ident.element
    names: list[str] = []
    for v, k in ident.multiplicities:
        names.extend([v] if k == 1 else [clone_name(v, j) for j in range(1, k + 1)])
    for v, k in ident.multiplicities:
        if k == 1:
            continue
        for j in range(1, k + 1):
            e = delta(e, v, 1, clone_name(v, j))
    final = get_alphabet(names)
    return [IdentityExpr.of(transport(e, final))]


def collapse_clones(e: Element, alphabet: Alphabet) -> Element:
    """Set every clone v#j back to v, over ``alphabet``."""
    images = {n: alphabet.var(n.split("#", 1)[0]) for n in variables_of(e)}
    return substitute(e, images, alphabet)


def polarization_factor(ident: IdentityExpr) -> int:
    out = 1
    for _, k in ident.multiplicities:
        out *= factorial(k)
    return out
