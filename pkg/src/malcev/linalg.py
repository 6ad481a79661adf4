"""Exact sparse linear algebra over Q, plus a modular echelon used for search.

Ranks are computed by fraction-free integer elimination: each row has its
denominators cleared and its content divided out, and a row is reduced
against a pivot by cross-multiplication, so no rational arithmetic happens in
the inner loop.  The modular :class:`ModEchelon` only ever *proposes*
answers; callers confirm them with exact arithmetic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "SparseRationalMatrix",
    "rank",
    "int_rank",
    "integer_row",
    "ModEchelon",
    "rational_reconstruct",
    "PRIMES",
]


@dataclass
class SparseRationalMatrix:
    """Rows of (column, value) pairs, columns strictly increasing, no zeros."""

    rows: list[list[tuple[int, Fraction]]] = field(default_factory=list)
    ncols: int = 0

    @classmethod
    def from_dicts(cls, rows: Iterable[dict], ncols: int | None = None):
        out = []
        top = -1
        for r in rows:
            items = sorted((c, Fraction(v)) for c, v in r.items() if v)
            if items:
                top = max(top, items[-1][0])
            out.append(items)
        return cls(out, top + 1 if ncols is None else ncols)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]):
        ncols = max((len(r) for r in dense), default=0)
        return cls.from_dicts(({j: v for j, v in enumerate(r) if v} for r in dense), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def check(self):
        for r in self.rows:
            cols = [c for c, _ in r]
            assert all(a < b for a, b in zip(cols, cols[1:])), "columns not increasing"
            assert all(v != 0 for _, v in r), "stored zero"
            assert all(0 <= c < self.ncols for c in cols), "column out of range"


def integer_row(row: dict) -> dict:
    """Scale a rational row to coprime integers (positive leading entry not enforced)."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _strip(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def int_rank(rows: Iterable[dict], keys_sorted: bool = False) -> int:
    """Exact rank over Q of sparse rows given as {column_key: rational}.

    Column keys only need to be mutually comparable.  Rows are inserted
    shortest first, ties broken by smallest largest-magnitude entry.
    """
    prepared = [integer_row(r) for r in rows]
    prepared = [r for r in prepared if r]
    prepared.sort(key=lambda r: (len(r), max(abs(v) for v in r.values())))
    pivots: dict = {}
    for row in prepared:
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a = row[lead]
            b = piv[lead]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            new = {c: v * fa for c, v in row.items()}
            for c, v in piv.items():
                s = new.get(c, 0) - v * fb
                if s:
                    new[c] = s
                else:
                    new.pop(c, None)
            row = _strip(new)
    return len(pivots)


def rank(m: SparseRationalMatrix) -> int:
    return int_rank(dict(r) for r in m.rows)


# ----------------------------------------------------------------------------
# modular search

# Large primes below 2**62; reconstruction bounds stay far above the
# coefficient sizes seen in practice.
PRIMES = (4611686018427387847, 4611686018427387817, 4611686018427387787)


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Smallest-height fraction n/d with n = a*d mod m, or None."""
    a %= m
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


class ModEchelon:
    """Incremental semi-echelon basis mod p with optional provenance tracking.

    Each stored row is monic at its leading column.  With ``track=True`` every
    row also carries the combination of inserted generators that produced it,
    which is how membership certificates are recovered.
    """

    def __init__(self, p: int = PRIMES[0], track: bool = True):
        self.p = p
        self.track = track
        self.rows: dict = {}      # leading column -> row dict
        self.combos: dict = {}    # leading column -> {generator index: coeff}
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def _to_mod(self, row: dict) -> dict:
        p = self.p
        out = {}
        for c, v in row.items():
            if isinstance(v, Fraction):
                v = v.numerator * pow(v.denominator, -1, p)
            v %= p
            if v:
                out[c] = v
        return out

    def reduce(self, row: dict, combo: dict | None = None):
        """Fully reduce ``row`` at every pivot column; returns (residual, combo)."""
        p = self.p
        rows = self.rows
        combos = self.combos
        row = dict(row)
        heap = list(row)
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            a = row.get(c)
            if not a:
                continue
            piv = rows.get(c)
            if piv is None:
                continue
            for col, v in piv.items():
                s = (row.get(col, 0) - a * v) % p
                if s:
                    if col not in row:
                        heapq.heappush(heap, col)
                    row[col] = s
                else:
                    row.pop(col, None)
            if combo is not None:
                for g, v in combos[c].items():
                    s = (combo.get(g, 0) - a * v) % p
                    if s:
                        combo[g] = s
                    else:
                        combo.pop(g, None)
        return row, combo

    def insert(self, row: dict) -> bool:
        """Add a generator; returns True when it raised the rank."""
        idx = self.count
        self.count += 1
        row = self._to_mod(row)
        combo = {idx: 1} if self.track else None
        p = self.p
        rows = self.rows
        combos = self.combos
        # reduce only until the leading column is new (semi-echelon)
        while row:
            lead = min(row)
            piv = rows.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                if inv != 1:
                    row = {c: v * inv % p for c, v in row.items()}
                    if combo is not None:
                        combo = {g: v * inv % p for g, v in combo.items()}
                rows[lead] = row
                if combo is not None:
                    combos[lead] = combo
                return True
            a = row[lead]
            for col, v in piv.items():
                s = (row.get(col, 0) - a * v) % p
                if s:
                    row[col] = s
                else:
                    row.pop(col, None)
            if combo is not None:
                for g, v in combos[lead].items():
                    s = (combo.get(g, 0) - a * v) % p
                    if s:
                        combo[g] = s
                    else:
                        combo.pop(g, None)
        return False

    def solve(self, target: dict):
        """Return (in_span, combination over generator indices mod p)."""
        row = self._to_mod(target)
        residual, combo = self.reduce(row, {} if self.track else None)
        if residual:
            return False, residual
        if combo is not None:
            # target - sum(a_c * row_c) == 0, and row_c == sum(combo_c)
            combo = {g: (-v) % self.p for g, v in combo.items()}
        return True, combo

    def annihilator(self, column) -> dict:
        """Functional phi with phi(row) = 0 for every stored row and phi[column] = 1.

        ``column`` must not be a pivot column.  Solved by back substitution
        over the leading columns in decreasing order.
        """
        p = self.p
        if column in self.rows:
            raise ValueError("column is a pivot column")
        phi = {column: 1}
        for lead in sorted(self.rows, reverse=True):
            row = self.rows[lead]
            s = 0
            for c, v in row.items():
                if c != lead:
                    w = phi.get(c)
                    if w:
                        s += v * w
            s %= p
            if s:
                phi[lead] = (-s) % p
        return phi
