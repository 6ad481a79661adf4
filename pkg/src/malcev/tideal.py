"""Membership in the multilinear part of the T-ideal generated by the Malcev identity.

In degree n the T-ideal is spanned by the elements C[mu(u1, u2, u3, u4)]:
mu is the full linearization of J(x,y,xz) - J(x,y,z)x, the u_i are monomials
on disjoint blocks of variables, and C is a monomial on the remaining
variables with one marked leaf.  Each such generator has at most 8 terms.

The search runs modulo a large prime.  Positive answers come with a
certificate (a rational combination of generators) that is replayed exactly;
negative answers come with an exact refutation: a nonzero value in a Lie
algebra or in m7, or failing that an annihilating functional that is checked
against every generator over the integers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

from . import lie, octonion
from .linalg import PRIMES, ModEchelon, int_rank, rational_reconstruct
from .linearize import IdentityExpr, multilinearize
from .terms import (
    XYZ,
    Alphabet,
    Element,
    Monomial,
    MultiDegree,
    canonicalize,
    get_alphabet,
    jacobian,
    monomials,
    multidegree_of,
    substitute,
    variables_of,
)

__all__ = [
    "MARK",
    "DEFAULT_DEGREE_CAP",
    "malcev_identity",
    "linearized_malcev",
    "MultilinearSpace",
    "GeneratorPattern",
    "ConsequenceCertificate",
    "Refutation",
    "ConsequenceResult",
    "consequence_space",
    "is_consequence",
    "check_identity",
    "consequence_rank",
    "standard_alphabet",
    "tideal_dim",
    "is_consequence_restituted",
]

MARK = "@"
DEFAULT_DEGREE_CAP = 7
EXTENDED_DEGREE_CAP = 8


def standard_alphabet(n: int) -> Alphabet:
    return get_alphabet(tuple(f"v{i}" for i in range(1, n + 1)))


def malcev_identity(alphabet: Alphabet | None = None) -> Element:
    """J(x,y,xz) - J(x,y,z)x."""
    alphabet = alphabet or get_alphabet(("x", "y", "z"))
    x, y, z = alphabet.vars()
    return jacobian(x, y, x * z) - jacobian(x, y, z) * x


@lru_cache(maxsize=None)
def linearized_malcev() -> IdentityExpr:
    """The Malcev identity polarized in x, over (x#1, x#2, y, z)."""
    (ident,) = multilinearize(malcev_identity())
    return ident


@lru_cache(maxsize=None)
def _template():
    """Terms of the linearized identity as (coeff, tree over slots 0..3)."""
    ident = linearized_malcev()
    slot = {n: i for i, n in enumerate(ident.element.alphabet.names)}

    def tree(m: Monomial):
        if m.var is not None:
            return slot[m.alphabet.names[m.var]]
        return (tree(m.left), tree(m.right))

    return tuple((c, tree(m)) for m, c in ident.element.items())


def _graft(t, leaves) -> tuple[int, Monomial | None]:
    """Canonical product tree with ``leaves[i]`` at slot i; (sign, monomial)."""
    if isinstance(t, int):
        return 1, leaves[t]
    sl, ml = _graft(t[0], leaves)
    if ml is None:
        return 0, None
    sr, mr = _graft(t[1], leaves)
    if mr is None:
        return 0, None
    s, m = Monomial.product(ml, mr)
    return s * sl * sr, m


def _context_tree(c: Monomial, mark_index: int):
    """Context monomial as a tree: variable indices, MARK as the string '@'."""
    if c.var is not None:
        return MARK if c.var == mark_index else c.var
    return (_context_tree(c.left, mark_index), _context_tree(c.right, mark_index))


def _plug(ctx, alphabet: Alphabet, inner: Monomial) -> tuple[int, Monomial | None]:
    if ctx == MARK:
        return 1, inner
    if isinstance(ctx, int):
        return 1, alphabet._leaves[ctx]
    sl, ml = _plug(ctx[0], alphabet, inner)
    if ml is None:
        return 0, None
    sr, mr = _plug(ctx[1], alphabet, inner)
    if mr is None:
        return 0, None
    s, m = Monomial.product(ml, mr)
    return s * sl * sr, m


def _raw(m: Monomial):
    return m.raw()


@dataclass(frozen=True)
class GeneratorPattern:
    """C[mu(u1, u2, u3, u4)] with C given as a raw tree containing MARK once."""

    context: object
    blocks: tuple

    def element(self, alphabet: Alphabet) -> Element:
        """Rebuild the generator with core_terms operations only."""
        ident = linearized_malcev()
        names = ident.element.alphabet.names
        images = {n: canonicalize(b, alphabet) for n, b in zip(names, self.blocks)}
        inner = substitute(ident.element, images, alphabet)
        ctx_alpha = get_alphabet(alphabet.names + (MARK,))
        ctx = canonicalize(self.context, ctx_alpha)
        return substitute(ctx, {MARK: inner}, alphabet)

    def relabel(self, mapping: dict) -> "GeneratorPattern":
        def walk(t):
            if isinstance(t, str):
                return mapping.get(t, t)
            return (walk(t[0]), walk(t[1]))

        return GeneratorPattern(walk(self.context), tuple(walk(b) for b in self.blocks))


class MultilinearSpace:
    """Canonical multilinear monomials on v1..vn; sizes (2n-3)!!."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.alphabet = standard_alphabet(n)
        self.basis = monomials(self.alphabet, (1,) * n)
        self.index = {m: i for i, m in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    def coordinates(self, e: Element) -> dict[int, Fraction]:
        if e.alphabet is not self.alphabet:
            raise ValueError("element is not over the standard alphabet")
        return {self.index[m]: c for m, c in e.terms.items()}


@lru_cache(maxsize=None)
def _space(n: int) -> MultilinearSpace:
    return MultilinearSpace(n)


def _subset_md(n: int, subset) -> tuple[int, ...]:
    md = [0] * n
    for i in subset:
        md[i] = 1
    return tuple(md)


def _generate(n: int):
    """Yield (pattern, row) for every generator, deduplicated, deterministic."""
    space = _space(n)
    alpha = space.alphabet
    names = alpha.names
    ctx_alpha = get_alphabet(names + (MARK,))
    mark = n
    template = _template()
    seen = set()
    # labels 0..3 are the blocks of mu, 4 is the context
    for labels in cartesian(range(5), repeat=n):
        blocks = [[i for i, lab in enumerate(labels) if lab == b] for b in range(4)]
        if not all(blocks):
            continue
        if blocks[0][0] > blocks[1][0]:
            continue  # mu is symmetric in its first two slots
        rest = [i for i, lab in enumerate(labels) if lab == 4]
        choices = [monomials(alpha, _subset_md(n, b)) for b in blocks]
        ctx_md = list(_subset_md(n + 1, rest))
        ctx_md[mark] = 1
        contexts = monomials(ctx_alpha, ctx_md)
        for us in cartesian(*choices):
            inner_terms = []
            for c, t in template:
                s, m = _graft(t, us)
                if s:
                    inner_terms.append((c * s, m))
            for ctx in contexts:
                ctree = _context_tree(ctx, mark)
                row: dict = {}
                for c, m in inner_terms:
                    s, g = _plug(ctree, alpha, m)
                    if s:
                        col = space.index[g]
                        v = row.get(col, 0) + c * s
                        if v:
                            row[col] = v
                        else:
                            del row[col]
                if not row:
                    continue
                key = tuple(sorted(row.items()))
                if key[0][1] < 0:
                    key = tuple((k, -v) for k, v in key)
                if key in seen:
                    continue
                seen.add(key)
                pattern = GeneratorPattern(_ctx_raw(ctree, names),
                                           tuple(_raw(u) for u in us))
                yield pattern, row


def _ctx_raw(t, names):
    if t == MARK:
        return MARK
    if isinstance(t, int):
        return names[t]
    return (_ctx_raw(t[0], names), _ctx_raw(t[1], names))


def _check_degree(n: int, allow_degree_8: bool):
    cap = EXTENDED_DEGREE_CAP if allow_degree_8 else DEFAULT_DEGREE_CAP
    if n > cap:
        raise ValueError(f"degree {n} exceeds the cap {cap}"
                         + ("" if allow_degree_8 else " (degree 8 needs allow_degree_8=True)"))


def consequence_space(n: int, allow_degree_8: bool = False) -> list[Element]:
    """Spanning set of the degree-n multilinear consequences over v1..vn."""
    if n < 4:
        return []
    _check_degree(n, allow_degree_8)
    space = _space(n)
    out = []
    for _, row in _generate(n):
        out.append(Element(space.alphabet, {space.basis[c]: Fraction(v) for c, v in row.items()}))
    return out


class _Echelon:
    """Generators of one degree reduced modulo one prime, with provenance."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.patterns: list[GeneratorPattern] = []
        self.rows: list[dict] = []
        self.ech = ModEchelon(p, track=True)
        for pattern, row in _generate(n):
            self.patterns.append(pattern)
            self.rows.append(row)
            self.ech.insert(row)

    @property
    def rank(self) -> int:
        return len(self.ech)


@lru_cache(maxsize=4)
def _echelon(n: int, p: int = PRIMES[0]) -> _Echelon:
    return _Echelon(n, p)


def consequence_rank(n: int) -> int:
    """Dimension of the degree-n multilinear consequences (modular, for diagnostics)."""
    if n < 4:
        return 0
    return _echelon(n).rank


@dataclass
class ConsequenceCertificate:
    """target = sum(coeff * generator); patterns use the target's own variable names."""

    terms: list[tuple[GeneratorPattern, Fraction]]

    def replay(self, alphabet: Alphabet) -> Element:
        total = alphabet.zero()
        for pattern, c in self.terms:
            total = total + pattern.element(alphabet) * c
        return total

    def to_json(self) -> list:
        return [{"context": _tree_json(p.context), "blocks": [_tree_json(b) for b in p.blocks],
                 "coeff": str(c)} for p, c in self.terms]


def _tree_json(t):
    if isinstance(t, str):
        return t
    return [_tree_json(t[0]), _tree_json(t[1])]


@dataclass
class Refutation:
    """Exact evidence that a target is not a consequence."""

    kind: str  # "lie", "m7" or "functional"
    detail: dict = field(default_factory=dict)


@dataclass
class ConsequenceResult:
    consequence: bool
    certificate: ConsequenceCertificate | None = None
    refutation: Refutation | None = None
    degree: int = 0
    rank: int = 0

    def __iter__(self):
        yield self.consequence
        yield self.certificate


def _to_standard(target: IdentityExpr):
    """Relabel the target's variables to v1..vn in their alphabet order."""
    e = target.element
    names = [n for n in e.alphabet.names if n in set(target.variables)]
    std = standard_alphabet(len(names))
    images = {n: std.var(v) for n, v in zip(names, std.names)}
    back = {v: n for n, v in zip(names, std.names)}
    return substitute(e, images, std), back


def _lie_refutes(e: Element) -> bool:
    return bool(lie.embed_terms(e))


def _m7_refutes(e: Element, seed: int = 0, trials: int = 2) -> list | None:
    rng = random.Random(seed)
    for _ in range(trials):
        point = [[rng.randint(-9, 9) for _ in range(7)] for _ in e.alphabet.names]
        value = octonion.eval_at(e, point)
        if any(value):
            return point
    return None


def _reconstruct(combo: dict, p: int) -> dict | None:
    out = {}
    for g, v in combo.items():
        q = rational_reconstruct(v, p)
        if q is None:
            return None
        out[g] = q
    return out


def is_consequence(target, allow_degree_8: bool = False) -> ConsequenceResult:
    """Decide whether a multilinear identity follows from the Malcev identity."""
    if isinstance(target, Element):
        target = IdentityExpr.of(target)
    if not target.is_multilinear():
        raise ValueError("target must be multilinear; run multilinearize first")
    n = target.degree
    e_std, back = _to_standard(target)
    if n < 4:
        if not e_std.terms:
            return ConsequenceResult(True, ConsequenceCertificate([]), degree=n)
        return ConsequenceResult(False, refutation=_refute(e_std, None), degree=n)
    _check_degree(n, allow_degree_8)
    space = _space(n)
    coords = space.coordinates(e_std)
    for p in PRIMES:
        ech = _echelon(n, p)
        ok, combo = ech.ech.solve(coords)
        if not ok:
            return ConsequenceResult(False, refutation=_refute(e_std, ech, coords),
                                     degree=n, rank=ech.rank)
        exact = _reconstruct(combo, p)
        if exact is None:
            continue
        cert = ConsequenceCertificate(
            [(ech.patterns[g].relabel(back), exact[g]) for g in sorted(exact)])
        if cert.replay(target.element.alphabet) == target.element:
            return ConsequenceResult(True, cert, degree=n, rank=ech.rank)
    raise ArithmeticError("modular membership found but no exact certificate reconstructed")


def _refute(e_std: Element, ech: _Echelon | None, coords: dict | None = None) -> Refutation:
    if _lie_refutes(e_std):
        return Refutation("lie", {"note": "nonzero in the free Lie algebra"})
    point = _m7_refutes(e_std)
    if point is not None:
        return Refutation("m7", {"point": point})
    if ech is None:
        raise ArithmeticError("no exact refutation found")
    p = ech.p
    residual, _ = ech.ech.reduce(ech.ech._to_mod(coords))
    col = min(residual)
    phi_mod = ech.ech.annihilator(col)
    phi = _reconstruct(phi_mod, p)
    if phi is None:
        raise ArithmeticError("annihilating functional did not reconstruct")
    for row in ech.rows:
        if sum(v * phi.get(c, 0) for c, v in row.items()) != 0:
            raise ArithmeticError("reconstructed functional fails on a generator")
    value = sum(Fraction(v) * phi.get(c, 0) for c, v in coords.items())
    if value == 0:
        raise ArithmeticError("reconstructed functional does not separate the target")
    return Refutation("functional", {"functional": {str(k): str(v) for k, v in sorted(phi.items())},
                                     "value": str(value)})


RESTITUTION_DEGREE = 7


def _restituted_rows(alphabet: Alphabet, md: tuple[int, ...]):
    """Yield (pattern, row) for generator images under v_i -> letters of ``md``.

    In characteristic 0 these images span the multidegree-``md`` component of
    the T-ideal, so membership there needs no multilinear space.
    """
    n = sum(md)
    letters = [i for i, k in enumerate(md) for _ in range(k)]
    leaves = [alphabet._leaves[i] for i in letters]
    index = {m: i for i, m in enumerate(monomials(alphabet, md))}
    images = {}
    for i, m in enumerate(_space(n).basis):
        s, g = _graft(_monomial_tree(m), leaves)
        images[i] = (s, index[g]) if s else None
    seen = set()
    for pattern, row in _generate(n):
        out: dict = {}
        for c, v in row.items():
            img = images[c]
            if img is None:
                continue
            s, col = img
            w = out.get(col, 0) + s * v
            if w:
                out[col] = w
            else:
                del out[col]
        if not out:
            continue
        key = tuple(sorted(out.items()))
        if key[0][1] < 0:
            key = tuple((k, -v) for k, v in key)
        if key not in seen:
            seen.add(key)
            yield pattern, out


class _RestitutedEchelon:
    """Like _Echelon, in the monomial space of one multidegree."""

    def __init__(self, names: tuple[str, ...], md: tuple[int, ...], p: int):
        self.alphabet = get_alphabet(names)
        self.p = p
        self.index = {m: i for i, m in enumerate(monomials(self.alphabet, md))}
        letters = [names[i] for i, k in enumerate(md) for _ in range(k)]
        self.relabel = {f"v{i + 1}": name for i, name in enumerate(letters)}
        self.patterns: list[GeneratorPattern] = []
        self.rows: list[dict] = []
        self.ech = ModEchelon(p, track=True)
        for pattern, row in _restituted_rows(self.alphabet, md):
            self.patterns.append(pattern)
            self.rows.append(row)
            self.ech.insert(row)

    @property
    def rank(self) -> int:
        return len(self.ech)


@lru_cache(maxsize=8)
def _restituted(names: tuple[str, ...], md: tuple[int, ...], p: int = PRIMES[0]):
    return _RestitutedEchelon(names, md, p)


def is_consequence_restituted(e: Element, allow_degree_8: bool = False) -> ConsequenceResult:
    """Decide a multihomogeneous identity in its own multidegree, without polarizing."""
    md = multidegree_of(e)
    if not isinstance(md, MultiDegree):
        raise ValueError(f"identity is not multihomogeneous ({md})")
    used = [(name, k) for name, k in zip(e.alphabet.names, md) if k]
    names = tuple(name for name, _ in used)
    small = get_alphabet(names)
    e_small = substitute(e, {name: small.var(name) for name in names}, small)
    md_small = tuple(k for _, k in used)
    n = sum(md_small)
    if n < 4:
        if not e_small.terms:
            return ConsequenceResult(True, ConsequenceCertificate([]), degree=n)
        return ConsequenceResult(False, refutation=_refute(e_small, None), degree=n)
    _check_degree(n, allow_degree_8)
    for p in PRIMES:
        ech = _restituted(names, md_small, p)
        coords = {ech.index[m]: c for m, c in e_small.terms.items()}
        ok, combo = ech.ech.solve(coords)
        if not ok:
            return ConsequenceResult(False, refutation=_refute(e_small, ech, coords),
                                     degree=n, rank=ech.rank)
        exact = _reconstruct(combo, p)
        if exact is None:
            continue
        cert = ConsequenceCertificate(
            [(ech.patterns[g].relabel(ech.relabel), exact[g]) for g in sorted(exact)])
        if cert.replay(e.alphabet) == e:
            return ConsequenceResult(True, cert, degree=n, rank=ech.rank)
    raise ArithmeticError("modular membership found but no exact certificate reconstructed")


def check_identity(e: Element, allow_degree_8: bool = False) -> list[ConsequenceResult]:
    """Check a homogeneous identity against the Malcev identity.

    Below degree 7 the identity is multilinearized and every component is
    checked; from degree 7 on it is checked in its own multidegree, which is
    equivalent in characteristic 0 and far smaller.
    """
    md = multidegree_of(e)
    if isinstance(md, MultiDegree) and md.total >= RESTITUTION_DEGREE:
        return [is_consequence_restituted(e, allow_degree_8)]
    return [is_consequence(part, allow_degree_8) for part in multilinearize(e)]


def tideal_dim(d, allow_degree_8: bool = False) -> int:
    """dim M_d computed from the T-ideal alone, independent of any model."""
    d = MultiDegree(d)
    cols = monomials(XYZ, d)
    if d.total < 4:
        return len(cols)
    _check_degree(d.total, allow_degree_8)
    rows = [row for _, row in _restituted_rows(XYZ, tuple(d))]
    return len(cols) - int_rank(rows)


def _monomial_tree(m: Monomial):
    if m.var is not None:
        return m.var
    return (_monomial_tree(m.left), _monomial_tree(m.right))
