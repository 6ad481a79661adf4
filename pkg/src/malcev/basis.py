"""The basis of J(M,M,M): enumeration, realization and verification.

A descriptor (k, l, m, n, p, q, r, tail) stands for

    J(x,y,z) G^k L_{x,x}^l L_{y,y}^m L_{z,z}^n L_{x,y}^p L_{x,z}^q L_{y,z}^r

right-multiplied by the letters of the tail (one of "", x, y, z, xy, xz, yz).
G is applied literally as t -> G(t, x, y, z).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import product as cartesian

from .operators import GOp, LOp, apply_operator
from .subdirect import dim_J, joint_image
from .linalg import int_rank
from .terms import XYZ, Element, MultiDegree, jacobian

__all__ = ["TAILS", "BasisDescriptor", "BasisReport", "enumerate_basis", "realize", "verify_basis"]

TAILS = ("", "x", "y", "z", "xy", "xz", "yz")
EXPONENTS = ("k", "l", "m", "n", "p", "q", "r")


@dataclass(frozen=True, order=True)
class BasisDescriptor:
    k: int = 0
    l: int = 0
    m: int = 0
    n: int = 0
    p: int = 0
    q: int = 0
    r: int = 0
    tail: str = ""

    def __post_init__(self):
        if self.tail not in TAILS:
            raise ValueError(f"tail must be one of {TAILS}, got {self.tail!r}")
        if min(self.exponents) < 0:
            raise ValueError("exponents must be non-negative")

    @property
    def exponents(self) -> tuple[int, ...]:
        return (self.k, self.l, self.m, self.n, self.p, self.q, self.r)

    def sort_key(self):
        return self.exponents + (TAILS.index(self.tail),)

    @property
    def multidegree(self) -> MultiDegree:
        k, l, m, n, p, q, r = self.exponents
        base = [1 + k + 2 * l + p + q, 1 + k + 2 * m + p + r, 1 + k + 2 * n + q + r]
        for ch in self.tail:
            base["xyz".index(ch)] += 1
        return MultiDegree(base)

    def label(self) -> str:
        x = "J(x,y,z)"
        parts = [x]
        for name, e in zip(("G", "L(x,x)", "L(y,y)", "L(z,z)", "L(x,y)", "L(x,z)", "L(y,z)"),
                           self.exponents):
            if e:
                parts.append(f".{name}" + (f"^{e}" if e > 1 else ""))
        text = "".join(parts)
        if self.tail:
            text += " " + " ".join(self.tail)
        return text


def enumerate_basis(d) -> list[BasisDescriptor]:
    """All descriptors of multidegree d, in (k, l, m, n, p, q, r, tail) order."""
    d = MultiDegree(d)
    if len(d) != 3:
        raise ValueError("multidegree must have three entries")
    out = []
    for tail in TAILS:
        t = [d[i] - tail.count(ch) - 1 for i, ch in enumerate("xyz")]
        if min(t) < 0:
            continue
        top = min(t)
        for k in range(top + 1):
            a, b, c = t[0] - k, t[1] - k, t[2] - k
            for p, q, r in cartesian(range(a + 1), range(a + 1), range(b + 1)):
                ra, rb, rc = a - p - q, b - p - r, c - q - r
                if min(ra, rb, rc) < 0 or ra % 2 or rb % 2 or rc % 2:
                    continue
                out.append(BasisDescriptor(k, ra // 2, rb // 2, rc // 2, p, q, r, tail))
    out.sort(key=BasisDescriptor.sort_key)
    return out


def realize(desc: BasisDescriptor) -> Element:
    x, y, z = XYZ.vars()
    letters = {"x": x, "y": y, "z": z}
    word = []
    if desc.k:
        word.append(GOp(desc.k))
    for (a, b), e in zip(((x, x), (y, y), (z, z), (x, y), (x, z), (y, z)), desc.exponents[1:]):
        if e:
            word.append(LOp(a, b, e))
    out = apply_operator(jacobian(x, y, z), word) if word else jacobian(x, y, z)
    for ch in desc.tail:
        out = out * letters[ch]
    return out


@dataclass
class BasisReport:
    multidegree: tuple
    count: int
    rank: int
    dim_j: int
    independent: bool
    spanning: bool
    descriptors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.independent and self.spanning

    def to_json(self) -> dict:
        out = asdict(self)
        out["multidegree"] = list(self.multidegree)
        out["descriptors"] = [d.label() for d in self.descriptors]
        return out


def verify_basis(d, mode: str = "symbolic") -> BasisReport:
    d = MultiDegree(d)
    descs = enumerate_basis(d)
    rank = int_rank(joint_image(realize(desc), mode) for desc in descs)
    dj = dim_J(d, mode) if d.total >= 1 else 0
    return BasisReport(tuple(d), len(descs), rank, dj,
                       independent=rank == len(descs), spanning=len(descs) == dj,
                       descriptors=descs)
