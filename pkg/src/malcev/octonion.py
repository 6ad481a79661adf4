"""The seven-dimensional simple Malcev algebra m7 and generic evaluation.

m7 is the space of trace-zero octonions with the plain commutator product.
Octonions come from Cayley-Dickson doubling of the quaternions with

    (u, v)(w, t) = (uw - conj(t) v, t u + v conj(w)),

and e1..e7 = i, j, k, l, il, jl, kl where l = (0, 1).

Three evaluation routes are provided:

``full``
    x, y, z go to a1 e1 + ... + a7 e7, b1 e1 + ..., c1 e1 + ... over 21
    indeterminates.  Exact but expensive past degree 5.
``symbolic`` (default)
    Exact evaluation at the normalised generic triple
    x = e1, y = b1 e1 + e2, z = c1 e1 + c2 e2 + c3 e3 + e4.  Over C the
    automorphism group G2 moves a Zariski-dense set of triples into this
    family (the stabiliser of e1 is transitive on the level sets of the norm
    on e1-perp, and the stabiliser of {e1, e2} is transitive on those of the
    orthogonal complement of the quaternions they span), and every product
    expression is G2-equivariant and homogeneous in each argument.  So an
    Element vanishes at this point iff it vanishes at the full generic point,
    and the two routes have identical kernels.
``randomized``
    Integer points with coordinates in [-2**15, 2**15], one-sided error.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .terms import XYZ, Alphabet, Element, Monomial

__all__ = [
    "StructureTable",
    "build_table",
    "octonion_mul",
    "OctPoly",
    "M7Element",
    "m7_mul",
    "eval_generic",
    "eval_normalized",
    "eval_at",
    "oct_is_zero",
    "ZeroTest",
    "RANDOM_RANGE",
]

RANDOM_RANGE = 2 ** 15
EXP_BITS = 8

# ----------------------------------------------------------------------------
# octonions by Cayley-Dickson doubling


def _qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def _qconj(p):
    return (p[0], -p[1], -p[2], -p[3])


def _qsub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _qadd(p, q):
    return tuple(a + b for a, b in zip(p, q))


def octonion_mul(u, v):
    """Product of octonions given as 8-tuples (real part first)."""
    a, b = tuple(u[:4]), tuple(u[4:])
    c, d = tuple(v[:4]), tuple(v[4:])
    first = _qsub(_qmul(a, c), _qmul(_qconj(d), b))
    second = _qadd(_qmul(d, a), _qmul(b, _qconj(c)))
    return first + second


def _unit(i):
    e = [0] * 8
    e[i] = 1
    return tuple(e)


@dataclass(frozen=True)
class StructureTable:
    """c[i][j][k] with e_i * e_j = sum_k c[i][j][k] e_k, indices 0..6 for e1..e7."""

    c: tuple

    def product(self, i: int, j: int) -> dict[int, int]:
        return {k: v for k, v in enumerate(self.c[i][j]) if v}

    def nonzero(self):
        """(i, j, k, c) for every nonzero structure constant."""
        return [(i, j, k, v)
                for i in range(7) for j in range(7)
                for k, v in enumerate(self.c[i][j]) if v]

    def vec_mul(self, u, v):
        out = [0] * 7
        for i, j, k, c in _NONZERO:
            if u[i] and v[j]:
                out[k] += c * u[i] * v[j]
        return out

    def jacobian(self, a, b, c):
        m = self.vec_mul
        return [p + q + r for p, q, r in zip(m(m(a, b), c), m(m(c, a), b), m(m(b, c), a))]

    def verify(self) -> dict:
        """Check antisymmetry, the Malcev identity on basis quadruples, non-Lie-ness."""
        basis = [[int(i == k) for k in range(7)] for i in range(7)]
        antisym = all(self.c[i][j][k] == -self.c[j][i][k]
                      for i in range(7) for j in range(7) for k in range(7))
        malcev_failures = 0
        for a in basis:
            for b in basis:
                for c in basis:
                    if self.jacobian(a, b, self.vec_mul(a, c)) != self.vec_mul(self.jacobian(a, b, c), a):
                        malcev_failures += 1
        # the identity has degree 2 in the first argument; the quadruple check
        # below polarises it so all 7**4 basis quadruples are covered
        quad_failures = 0
        for a in basis:
            for d in basis:
                for b in basis:
                    for c in basis:
                        lhs = [p + q for p, q in zip(self.jacobian(a, b, self.vec_mul(d, c)),
                                                     self.jacobian(d, b, self.vec_mul(a, c)))]
                        rhs = [p + q for p, q in zip(self.vec_mul(self.jacobian(a, b, c), d),
                                                     self.vec_mul(self.jacobian(d, b, c), a))]
                        if lhs != rhs:
                            quad_failures += 1
        jacobi_witnesses = [(i, j, k) for i in range(7) for j in range(7) for k in range(7)
                            if any(self.jacobian(basis[i], basis[j], basis[k]))]
        return {
            "antisymmetric": antisym,
            "malcev_failures": malcev_failures + quad_failures,
            "quadruples_checked": 7 ** 4,
            "jacobi_witnesses": jacobi_witnesses,
        }


@lru_cache(maxsize=None)
def build_table() -> StructureTable:
    """Commutator table of the imaginary octonion units."""
    units = [_unit(i) for i in range(1, 8)]
    c = []
    for i in range(7):
        row = []
        for j in range(7):
            uv = octonion_mul(units[i], units[j])
            vu = octonion_mul(units[j], units[i])
            comm = [p - q for p, q in zip(uv, vu)]
            assert comm[0] == 0
            row.append(tuple(comm[1:]))
        c.append(tuple(row))
    table = StructureTable(tuple(c))
    return table


_NONZERO = build_table().nonzero()


# ----------------------------------------------------------------------------
# polynomials with packed exponent vectors


class OctPoly:
    """Sparse polynomial; exponents packed EXP_BITS bits per variable.

    Variable 0 sits in the most significant field, so numeric order on the
    packed codes is lexicographic order on exponent vectors.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names: tuple[str, ...], terms: dict):
        self.names = names
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, OctPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    __hash__ = None

    def exponents(self, code: int) -> tuple[int, ...]:
        n = len(self.names)
        mask = (1 << EXP_BITS) - 1
        return tuple((code >> (EXP_BITS * (n - 1 - i))) & mask for i in range(n))

    def as_dict(self) -> dict[tuple[int, ...], object]:
        return {self.exponents(c): v for c, v in sorted(self.terms.items())}

    def degree_in(self, indices) -> set[int]:
        """Set of total degrees in the given block of variables, over all terms."""
        return {sum(self.exponents(c)[i] for i in indices) for c in self.terms}

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for code, v in self.terms.items():
            term = Fraction(v)
            for e, x in zip(self.exponents(code), point):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, v in self.as_dict().items():
            mono = "*".join(f"{n}^{e}" if e > 1 else n
                            for n, e in zip(self.names, exps) if e)
            parts.append(f"{v}*{mono}" if mono else f"{v}")
        return " + ".join(parts)


def _var_code(i: int, nvars: int) -> int:
    return 1 << (EXP_BITS * (nvars - 1 - i))


def _pmul(p: dict, q: dict) -> dict:
    if len(p) > len(q):
        p, q = q, p
    out: dict = {}
    get = out.get
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = ea + eb
            out[e] = get(e, 0) + ca * cb
    return {e: v for e, v in out.items() if v}


def _vec_mul(u, v):
    """m7 product of coordinate vectors whose entries are sparse polys."""
    acc: list[dict] = [{} for _ in range(7)]
    for i, j, k, c in _NONZERO:
        ui = u[i]
        vj = v[j]
        if not ui or not vj:
            continue
        target = acc[k]
        for e, val in _pmul(ui, vj).items():
            s = target.get(e, 0) + c * val
            if s:
                target[e] = s
            else:
                del target[e]
    return tuple(acc)


class M7Element:
    """Seven polynomial coordinates with respect to e1..e7."""

    __slots__ = ("names", "coords")

    def __init__(self, names: tuple[str, ...], coords):
        self.names = names
        self.coords = tuple(coords)

    def __getitem__(self, k) -> OctPoly:
        return OctPoly(self.names, self.coords[k])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, M7Element):
            return NotImplemented
        return self.names == other.names and self.coords == other.coords

    __hash__ = None

    def __add__(self, other):
        return M7Element(self.names, [_padd(a, b, 1) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return M7Element(self.names, [_padd(a, b, -1) for a, b in zip(self.coords, other.coords)])

    def __repr__(self):
        return "M7Element(" + ", ".join(repr(self[k]) for k in range(7)) + ")"


def _padd(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for e, v in b.items():
        s = out.get(e, 0) + sign * v
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def m7_mul(u: M7Element, v: M7Element) -> M7Element:
    if u.names != v.names:
        raise ValueError("M7Elements over different polynomial rings")
    return M7Element(u.names, _vec_mul(u.coords, v.coords))


# ----------------------------------------------------------------------------
# evaluation routes

GENERIC_NAMES = tuple(f"{blk}{i}" for blk in "abc" for i in range(1, 8))
NORMALIZED_NAMES = ("b1", "c1", "c2", "c3")


def _generic_point(nvars_per_block: int = 7, blocks: int = 3):
    n = nvars_per_block * blocks
    gens = []
    for b in range(blocks):
        gens.append(tuple({_var_code(b * 7 + i, n): 1} for i in range(7)))
    return gens


_GENERIC = _generic_point()


def _normalized_point():
    n = len(NORMALIZED_NAMES)
    one = {0: 1}
    b1, c1, c2, c3 = ({_var_code(i, n): 1} for i in range(n))
    x = (one, {}, {}, {}, {}, {}, {})
    y = (b1, one, {}, {}, {}, {}, {})
    z = (c1, c2, c3, one, {}, {}, {})
    return (x, y, z)


_NORMALIZED = _normalized_point()


def _eval_monomial(m: Monomial, images, memo_key):
    memo = m._memo
    hit = memo.get(memo_key)
    if hit is not None:
        return hit
    if m.var is not None:
        out = images[m.var]
    else:
        out = _vec_mul(_eval_monomial(m.left, images, memo_key),
                       _eval_monomial(m.right, images, memo_key))
    memo[memo_key] = out
    return out


def _eval_terms(e: Element, images, memo_key):
    acc: list[dict] = [{} for _ in range(7)]
    for m, c in e.terms.items():
        vec = _eval_monomial(m, images, memo_key)
        for k in range(7):
            target = acc[k]
            for code, v in vec[k].items():
                s = target.get(code, 0) + c * v
                if s:
                    target[code] = s
                else:
                    del target[code]
    return tuple(acc)


def _require_xyz(e: Element):
    if len(e.alphabet) > 3:
        raise ValueError(f"octonion evaluation needs at most 3 generators, got {e.alphabet!r}")


def eval_generic(e: Element) -> M7Element:
    """Substitute x, y, z by the generic elements over a1..a7, b1..b7, c1..c7."""
    _require_xyz(e)
    return M7Element(GENERIC_NAMES, _eval_terms(e, _GENERIC, "oct_full"))


def eval_normalized(e: Element) -> M7Element:
    """Evaluate at x = e1, y = b1 e1 + e2, z = c1 e1 + c2 e2 + c3 e3 + e4."""
    _require_xyz(e)
    return M7Element(NORMALIZED_NAMES, _eval_terms(e, _NORMALIZED, "oct_nf"))


def normalized_coordinates(m: Monomial) -> tuple:
    """Raw coordinate dicts of a monomial at the normalised point (memoised)."""
    return _eval_monomial(m, _NORMALIZED, "oct_nf")


def eval_at(e: Element, point) -> list[Fraction]:
    """Evaluate at concrete vectors: ``point`` gives one 7-vector per variable."""
    table = build_table()
    cache: dict = {}

    def walk(m: Monomial):
        v = cache.get(m)
        if v is None:
            if m.var is not None:
                v = [Fraction(t) for t in point[m.var]]
            else:
                v = table.vec_mul(walk(m.left), walk(m.right))
            cache[m] = v
        return v

    out = [Fraction(0)] * 7
    for m, c in e.terms.items():
        v = walk(m)
        out = [o + c * t for o, t in zip(out, v)]
    return out


@dataclass(frozen=True)
class ZeroTest:
    """Outcome of a zero test; ``error_bound`` is 0 for exact modes."""

    zero: bool
    mode: str
    error_bound: Fraction = Fraction(0)
    trials: int = 0
    seed: int | None = None

    def __bool__(self):
        return self.zero


def oct_is_zero(e: Element, mode: str = "symbolic", seed: int = 0, trials: int = 3) -> ZeroTest:
    """Does ``e`` vanish in the relatively free algebra of m7?

    ``symbolic`` and ``full`` are exact.  ``randomized`` may wrongly report
    zero with probability at most (deg / (2 * 2**15 + 1)) ** trials.
    """
    if mode == "symbolic":
        return ZeroTest(eval_normalized(e).is_zero(), mode)
    if mode == "full":
        return ZeroTest(eval_generic(e).is_zero(), mode)
    if mode == "randomized":
        if trials <= 0:
            raise ValueError("randomized mode needs trials >= 1")
        _require_xyz(e)
        rng = random.Random(seed)
        nvars = len(e.alphabet)
        for _ in range(trials):
            point = [[rng.randint(-RANDOM_RANGE, RANDOM_RANGE) for _ in range(7)]
                     for _ in range(nvars)]
            if any(eval_at(e, point)):
                return ZeroTest(False, mode, Fraction(0), trials, seed)
        deg = e.degree()
        bound = Fraction(deg, 2 * RANDOM_RANGE + 1) ** trials
        return ZeroTest(True, mode, bound, trials, seed)
    raise ValueError(f"unknown mode {mode!r}")
