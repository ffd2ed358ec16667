"""Okounkov-style q-MZVs with symmetric numerators.

For ``s >= 2`` write ``s = s_minus + s_plus`` with ``s_plus - s_minus`` in
{0, 1}.  The value of ``[s_1, ..., s_d]`` is

    sum_{k_1 > ... > k_d > 0} prod_j (q^(k_j s_j+) + q^(k_j s_j-)) / (1 - q^(k_j))^(s_j)

which in words is the product of the blocks
``(rho^(s-) pi^(s+) + rho^(s+) pi^(s-)) y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    PI,
    RHO,
    Y,
    ArgumentTooSmall,
    LinComb,
    TypeTag,
    ZO,
    composition_of,
)
from .linalg import Echelon
from .qseries import DEFAULT_ORDER, TruncatedSeries, eval_lincomb
from .shuffle import to_compositions

# generating function of the conjectured dimensions:
# 1/(1 - t - t^2 + t^6 + t^8 - t^13) - 1/(1 - t)
_CONJ_DENOM = {0: 1, 1: -1, 2: -1, 6: 1, 8: 1, 13: -1}


@dataclass(frozen=True)
class OSplit:
    s: int
    minus: int
    plus: int

    @classmethod
    def of(cls, s: int) -> "OSplit":
        if s < 2:
            raise ArgumentTooSmall(f"type O arguments must be >= 2, got {s}")
        return cls(s, s // 2, s - s // 2)


def enumerate_o(w: int) -> list[tuple[int, ...]]:
    """Compositions with all parts >= 2 and total <= w, by weight, depth, lex."""
    out = []

    def rec(prefix, budget):
        if prefix:
            out.append(tuple(prefix))
        for part in range(2, budget + 1):
            rec(prefix + [part], budget - part)

    rec([], w)
    out.sort(key=lambda s: (sum(s), len(s), s))
    return out


def oword_expand(s: Sequence[int]) -> LinComb:
    """PY-word expansion of the type O value of ``s``."""
    acc = LinComb.of("")
    for x in s:
        sp = OSplit.of(int(x))
        block = LinComb()
        block.add_term(RHO * sp.minus + PI * sp.plus + Y, 1)
        block.add_term(RHO * sp.plus + PI * sp.minus + Y, 1)
        nxt = LinComb()
        for w, c in acc.items():
            for b, c2 in block.items():
                nxt.add_term(w + b, c * c2)
        acc = nxt
    return acc


def o_to_compositions(s: Sequence[int]) -> LinComb:
    """The type O value of ``s`` as a combination of compositions."""
    return oword_expand(s).map_keys(composition_of)


def o_lincomb_to_compositions(rel: dict) -> LinComb:
    out = LinComb()
    for s, c in rel.items():
        out.iadd(o_to_compositions(s), c)
    return out


def eval_o(s: Sequence[int], order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return eval_lincomb(o_to_compositions(s), order=order)


def direct_o_value(s: Sequence[int], order: int) -> TruncatedSeries:
    """Reference evaluation by expanding every summand (slow)."""
    splits = [OSplit.of(x) for x in s]
    d = len(s)
    total = [0] * (order + 1)

    def factor(k, sp):
        f = [0] * (order + 1)
        for e in {k * sp.plus, k * sp.minus}:
            if e <= order:
                f[e] += 1 if sp.plus != sp.minus else 2
        for _ in range(sp.s):
            for i in range(k, order + 1):
                f[i] += f[i - k]
        return f

    def mul(a, b):
        out = [0] * (order + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(order + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return out

    def rec(j, upper, acc):
        if j == d:
            for i, v in enumerate(acc):
                total[i] += v
            return
        for k in range(1, upper):
            if j == 0 and k * splits[0].minus > order:
                break
            nxt = mul(acc, factor(k, splits[j]))
            if any(nxt):
                rec(j + 1, k, nxt)

    rec(0, order + 1, [1] + [0] * order)
    return TruncatedSeries(total, order)


def f_o(n: int, order: int) -> list:
    """Taylor coefficients of (t^(n+) + t^(n-)) / (1 - t)^n."""
    sp = OSplit.of(n)
    c = [0] * (order + 1)
    for e in (sp.plus, sp.minus):
        if e <= order:
            c[e] += 1
    for _ in range(n):
        for i in range(1, order + 1):
            c[i] += c[i - 1]
    return c


def f_o_product_holds(r: int, s: int, order: int = 50) -> bool:
    """Check the product rule for F_r * F_s as power series in t."""
    a, b = f_o(r, order), f_o(s, order)
    lhs = [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(order + 1)]
    rhs = [2 * x for x in f_o(r + s, order)]
    if r % 2 and s % 2:
        rhs = [x + Fraction(1, 2) * y for x, y in zip(rhs, f_o(r + s - 2, order))]
    return lhs == rhs


def conjectured_dimensions(w_max: int) -> dict[int, int]:
    """Coefficients of t^w, w <= w_max, of the conjectured generating series."""
    inv = [0] * (w_max + 1)
    inv[0] = 1
    for n in range(1, w_max + 1):
        inv[n] = -sum(_CONJ_DENOM.get(k, 0) * inv[n - k] for k in range(1, n + 1))
    return {w: inv[w] - 1 for w in range(1, w_max + 1)}


# --------------------------------------------------------------------------
# dimension checks

Unavailable = None


@dataclass
class OkounkovReport:
    weight: int
    words: int
    series_rank: int
    certified_dim: int | None
    conjectured: int

    @property
    def ok(self) -> bool:
        if self.series_rank != self.conjectured:
            return False
        return self.certified_dim is None or self.certified_dim == self.conjectured


def series_rank(w: int, N: int = DEFAULT_ORDER) -> int:
    e = Echelon()
    for s in enumerate_o(w):
        coeffs = eval_o(s, N).coeffs
        e.add({i: c for i, c in enumerate(coeffs) if c})
    return e.rank


def certified_dimension(w: int, relations) -> int:
    """Rank of the type O values modulo a type II relation system.

    The values are rewritten in the type II basis through pi = rho + 1; an
    O-relation is certified when its image lies in the span of the given
    relations, so the quotient rank is an upper bound for the dimension.
    """
    if relations.type is not TypeTag.II:
        raise ValueError("certification needs a type II relation system")
    e = relations.echelon()
    base = e.rank
    for s in enumerate_o(w):
        lc = to_compositions(TypeTag.II, oword_expand(s))
        e.add(relations.vector(lc))
    return e.rank - base


def verify_okounkov(w: int, N: int = DEFAULT_ORDER, relations=None, certify_up_to: int = 6) -> OkounkovReport:
    """Series rank of the type O values of weight <= w and, when a type II
    system is available, the certified dimension."""
    if w < 2:
        raise ValueError("w must be >= 2")
    rank = series_rank(w, N)
    if relations is None and w <= certify_up_to:
        from .relations import gen_all

        relations = gen_all(TypeTag.II, w)
    cert = Unavailable
    if relations is not None:
        cert = certified_dimension(w, relations)
        if cert < rank:
            raise AssertionError(f"certified dimension {cert} below series rank {rank}")
    return OkounkovReport(w, len(enumerate_o(w)), rank, cert, conjectured_dimensions(w)[w])


# --------------------------------------------------------------------------
# the weight 6..9 relations, as lhs - rhs over argument tuples

O_RELATIONS: list[dict] = [
    {(6,): 4, (2, 2): -1, (3, 3): -12, (4, 2): 6},
    {(7,): 4, (2, 3): -1, (3, 2): -1, (3, 4): -8, (4, 3): -6, (5, 2): 4},
    {(8,): 1, (2, 4): -1, (6,): 1, (3, 3): -2, (4, 4): -6},
    {(8,): 9, (6,): -1, (3, 3): 6, (4, 2): -3, (3, 5): -20, (5, 3): -16, (6, 2): 10},
    {
        (8,): 1, (2, 6): -2, (6,): 1, (3, 3): -2, (3, 5): -4, (5, 3): 16,
        (2, 3, 3): 6, (2, 4, 2): -3, (3, 2, 3): 6, (4, 2, 2): 3,
    },
    {(3, 6): 4, (2, 5): -1, (5, 2): -4, (3, 4): -3, (4, 5): -6, (5, 4): -8, (7, 2): -2},
    {(9,): 8, (3, 4): -1, (2, 5): 5, (5, 2): 8, (4, 5): 30, (4, 3): 2, (5, 4): 36, (6, 3): 10},
    {
        (4, 2): 6, (6,): -10, (8,): -42, (2, 6): 60, (3, 3): 12, (3, 5): 120, (5, 3): -312,
        (2, 2, 2): 15, (2, 3, 3): -180, (2, 4, 2): 90, (3, 2, 3): -180, (3, 3, 2): -60,
    },
    {
        (9,): 72, (5, 2): -62, (2, 5): -40, (3, 4): 4, (3, 6): -40, (4, 3): 2, (4, 5): -240,
        (5, 4): -264, (2, 2, 3): 5, (3, 3, 3): 60, (4, 2, 3): 30,
    },
    {
        (9,): 16, (3, 4): -2, (2, 5): 10, (2, 7): 12, (5, 2): 8, (4, 5): 60, (5, 4): 24,
        (2, 3, 2): -4, (3, 2, 2): -4, (2, 2, 3): -3, (2, 3, 4): -24, (2, 4, 3): -18,
        (3, 3, 3): -12, (2, 5, 2): 12, (3, 2, 4): -24, (4, 3, 2): -6,
    },
    {
        (9,): 64, (2, 5): -40, (2, 7): -20, (3, 4): 8, (5, 2): -44, (3, 6): -20, (4, 3): 4,
        (4, 5): -240, (5, 4): -168, (2, 3, 2): 5, (2, 2, 3): 5, (2, 3, 4): 40, (2, 4, 3): 30,
        (2, 5, 2): -20, (3, 2, 2): 5, (3, 2, 4): 40, (3, 3, 3): 100, (3, 4, 2): -10,
    },
    {
        (9,): 56, (2, 5): -30, (2, 7): -20, (5, 2): -26, (3, 4): 1, (3, 6): -40, (4, 3): 6,
        (4, 5): -180, (5, 4): -112, (2, 2, 3): 5, (2, 3, 2): 5, (3, 2, 2): 5, (2, 3, 4): 40,
        (5, 2, 2): -20, (3, 2, 4): 40, (2, 4, 3): 30, (2, 5, 2): -20, (3, 3, 3): 140,
    },
]


def o_relation_residuals(N: int = DEFAULT_ORDER) -> list:
    """First nonzero series term of each listed relation (None when it vanishes)."""
    return [eval_lincomb(o_lincomb_to_compositions(rel), order=N).first_nonzero() for rel in O_RELATIONS]


def verify_o_relation_list(N: int = DEFAULT_ORDER) -> bool:
    return all(r is None for r in o_relation_residuals(N))


def o_word(s: Sequence[int]) -> tuple:
    return tuple(ZO(int(x)) for x in s)

