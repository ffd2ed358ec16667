"""Exact rank computations over the rationals.

Sparse rows are dicts ``column -> rational``.  :class:`Echelon` keeps an
incrementally built row echelon form in which every pivot row has its pivot
as its smallest column, so rows whose smallest column lies in a trailing
block of columns live entirely inside that block.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _normalize(row: dict) -> dict:
    """Scale a nonzero row to a primitive integer vector with positive lead."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    if den != 1:
        row = {k: int(v * den) for k, v in row.items()}
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incremental echelon basis of a row space, fraction-free.

    Rows are kept as primitive integer vectors; eliminating the lead of a
    new row ``r`` against pivot ``p`` uses ``p[c] * r - r[c] * p``.
    """

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Return the residue of ``row`` after eliminating known pivots."""
        row = {k: v for k, v in row.items() if v}
        if not row:
            return row
        row = _normalize(row)
        pivots = self.pivots
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                return row
            a, b = p[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: v * a for k, v in row.items()} if a != 1 else dict(row)
            for k, v in p.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            row = _normalize(new) if new else new
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; True iff it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def extend(self, rows: Iterable[dict]) -> int:
        n = 0
        for r in rows:
            n += self.add(r)
        return n

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows_within(self, start: int) -> list[dict]:
        """Echelon rows supported on columns >= start."""
        return [r for c, r in sorted(self.pivots.items()) if c >= start]


def rank_of(rows: Iterable[dict]) -> int:
    e = Echelon()
    e.extend(rows)
    return e.rank


def dense_rank(matrix: Sequence[Sequence]) -> int:
    """Exact rank of a dense integer/rational matrix (rows x columns)."""
    rows = []
    for r in matrix:
        d = {i: v for i, v in enumerate(r) if v}
        if d:
            rows.append(d)
    return rank_of(rows)
