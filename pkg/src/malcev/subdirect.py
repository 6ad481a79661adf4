"""The faithful model of the free Malcev algebra on x, y, z.

An element is zero in M exactly when its free Lie image and its image in the
relatively free algebra of m7 both vanish.  Graded dimensions are ranks of the
stacked coordinate vectors ("joint images") of the two projections.
"""

from __future__ import annotations

from itertools import product as cartesian

from . import lie, octonion
from .linalg import int_rank
from .terms import XYZ, Element, MultiDegree, Monomial, jacobian, monomials

__all__ = [
    "joint_image",
    "monomial_image",
    "zero_in_M",
    "zero_test",
    "dim_M",
    "dim_J",
    "jspan_rank",
    "jspan_elements",
    "rank_of",
    "MODES",
]

MODES = ("symbolic", "full")
_LIE_BITS = lie.letter_bits(XYZ)


def _oct_coords(m: Monomial, mode: str):
    if mode == "symbolic":
        return octonion._eval_monomial(m, octonion._NORMALIZED, "oct_nf")
    if mode == "full":
        return octonion._eval_monomial(m, octonion._GENERIC, "oct_full")
    raise ValueError(f"unknown exact mode {mode!r}")


def monomial_image(m: Monomial, mode: str = "symbolic") -> dict:
    """Joint coordinates of one monomial.

    Keys are (0, packed word) for the Lie block and (1, entry, packed
    exponents) for the octonion block, so sorting them gives the column order.
    """
    if m.alphabet is not XYZ:
        raise ValueError("the faithful model is defined on the alphabet x, y, z")
    key = "joint_" + mode
    hit = m._memo.get(key)
    if hit is not None:
        return hit
    out = {(0, w): c for w, c in lie._embed_monomial(m, _LIE_BITS).items()}
    for k, coord in enumerate(_oct_coords(m, mode)):
        for code, c in coord.items():
            out[(1, k, code)] = c
    m._memo[key] = out
    return out


def joint_image(e: Element, mode: str = "symbolic") -> dict:
    """Joint coordinates of an Element; empty exactly when it is zero in M."""
    out: dict = {}
    for m, c in e.terms.items():
        for col, v in monomial_image(m, mode).items():
            s = out.get(col, 0) + c * v
            if s:
                out[col] = s
            else:
                del out[col]
    return out


def zero_test(e: Element, mode: str = "symbolic", seed: int = 0,
              trials: int = 3) -> octonion.ZeroTest:
    """Zero test in M; the Lie side is always exact, ``mode`` picks the m7 side."""
    if e.alphabet is not XYZ:
        raise ValueError("zero tests in M work over the alphabet x, y, z")
    if not lie.lie_is_zero(e):
        return octonion.ZeroTest(False, mode)
    return octonion.oct_is_zero(e, mode, seed=seed, trials=trials)


def zero_in_M(e: Element, mode: str = "symbolic") -> bool:
    return zero_test(e, mode).zero


def rank_of(elements, mode: str = "symbolic") -> int:
    """Rank in M of a list of Elements."""
    return int_rank(joint_image(e, mode) for e in elements)


def dim_M(d, mode: str = "symbolic") -> int:
    d = MultiDegree(d)
    if d.total < 1:
        raise ValueError("multidegree must have total degree >= 1")
    return int_rank(monomial_image(m, mode) for m in monomials(XYZ, d))


def dim_J(d, mode: str = "symbolic") -> int:
    """Dimension of J(M,M,M) in multidegree d, as dim M minus the Lie part."""
    d = MultiDegree(d)
    return dim_M(d, mode) - lie.lie_dim(d)


def _letter_sequences(d):
    letters = [i for i, k in enumerate(d) for _ in range(k)]
    seen = set()
    for seq in cartesian(range(3), repeat=len(letters)):
        if sorted(seq) == letters and seq not in seen:
            seen.add(seq)
            yield seq


def jspan_elements(d) -> list[Element]:
    """J(x,y,z) right-multiplied by every letter sequence of multidegree d - (1,1,1)."""
    d = MultiDegree(d)
    rest = tuple(k - 1 for k in d)
    if min(rest) < 0:
        return []
    x, y, z = XYZ.vars()
    gens = (x, y, z)
    out = []
    for seq in _letter_sequences(rest):
        e = jacobian(x, y, z)
        for i in seq:
            e = e * gens[i]
        out.append(e)
    return out


def jspan_rank(d, mode: str = "symbolic") -> int:
    return rank_of(jspan_elements(d), mode)
