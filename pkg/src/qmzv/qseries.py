"""Truncated q-series with exact rational coefficients.

Every q-MZV considered here with ``t_1 >= 1`` is a power series in q whose
coefficient of q^m only involves summation indices ``k_1 <= m``; this makes
truncation at a fixed order exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .core import (
    Composition,
    Divergent,
    LinComb,
    NegativeArgument,
    TypeTag,
    as_rational,
    composition_of,
    format_rational,
    sort_runs,
    zword_to_composition,
)

DEFAULT_ORDER = 100


class TruncatedSeries:
    """Power series in q modulo q^(N+1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = coeffs[: order + 1]
        coeffs.extend([0] * (order + 1 - len(coeffs)))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0] * (order + 1), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1] + [0] * order, order)

    def _check(self, other: "TruncatedSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries([a * c for a in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [0] * (n + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return TruncatedSeries(out, n)

    __rmul__ = scale

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def first_nonzero(self):
        """``(index, coefficient)`` of the lowest nonzero term, or None."""
        v = self.valuation()
        return None if v is None else (v, self.coeffs[v])

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.order, tuple(Fraction(c) for c in self.coeffs)))

    def __repr__(self):
        return f"TruncatedSeries({self.render()}, order={self.order})"

    def render(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            coeff = format_rational(c)
            if i == 0:
                terms.append(coeff)
            elif i == 1:
                terms.append(f"{coeff}*q")
            else:
                terms.append(f"{coeff}*q^{i}")
        terms.append(f"O(q^{self.order + 1})")
        return " + ".join(terms)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "TruncatedSeries":
        return cls([as_rational(x) for x in items])


def _div_one_minus(c: list, k: int, times: int) -> None:
    """In place: c <- c / (1 - q^k)^times."""
    n = len(c)
    for _ in range(times):
        for i in range(k, n):
            c[i] += c[i - k]


@lru_cache(maxsize=1 << 14)
def _eval_cached(s: tuple, t: tuple, order: int) -> tuple:
    d = len(s)
    if d == 0:
        return (1,) + (0,) * order
    if t[0] < 1:
        raise Divergent(f"t_1 = {t[0]}: the series is not q-adically convergent")
    if any(x < 0 for x in s) or any(x < 0 for x in t):
        raise NegativeArgument(f"negative entries in s={s}, t={t}")
    n = order
    kmax = n // t[0]
    # inner[k] = sum_{k' < k} G_{j+1}(k'), truncated to the degree budget
    # n - t_1*k that is still visible once the outer q^(t_1 k_1) is applied
    inner = None
    for j in range(d - 1, 0, -1):
        acc = [0] * (n + 1)
        new_inner = [None] * (kmax + 1)
        for k in range(1, kmax + 1):
            budget = n - t[0] * (k + 1)
            if budget < 0:
                break
            if inner is None:
                g = [0] * (budget + 1)
                g[0] = 1
            else:
                g = inner[k][: budget + 1] if inner[k] is not None else [0] * (budget + 1)
                g.extend([0] * (budget + 1 - len(g)))
            sh = t[j] * k
            if sh:
                g = ([0] * sh + g)[: budget + 1]
            _div_one_minus(g, k, s[j])
            for i, v in enumerate(g):
                if v:
                    acc[i] += v
            new_inner[k + 1] = acc[: n - t[0] * (k + 1) + 1] if k + 1 <= kmax else None
        inner = new_inner
    total = [0] * (n + 1)
    for k in range(1, kmax + 1):
        budget = n - t[0] * k
        if inner is None:
            g = [0] * (budget + 1)
            g[0] = 1
        else:
            src = inner[k]
            if src is None:
                continue
            g = list(src[: budget + 1])
            g.extend([0] * (budget + 1 - len(g)))
        _div_one_minus(g, k, s[0])
        off = t[0] * k
        for i, v in enumerate(g):
            if v:
                total[off + i] += v
    return tuple(total)


def eval_value(c: Composition, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Series of sum_{k_1>...>k_d>0} prod q^(t_j k_j) (1-q^(k_j))^(-s_j)."""
    if not isinstance(c, Composition):
        c = Composition.make(*c)
    return TruncatedSeries(_eval_cached(c.s, c.t, order), order)


def _key_to_composition(key, type_: TypeTag | None) -> LinComb:
    if isinstance(key, Composition):
        return LinComb.of(key)
    if isinstance(key, str):
        from .shuffle import normalize_typical

        if type_ is None or type_ is TypeTag.O:
            return LinComb.of(composition_of(sort_runs(key)))
        return normalize_typical(type_, LinComb.of(key)).map_keys(
            lambda w: composition_of(sort_runs(w))
        )
    if type_ is TypeTag.O:
        from .okounkov import o_to_compositions

        return o_to_compositions(tuple(letter.s for letter in key))
    return LinComb.of(zword_to_composition(key, type_))


def eval_lincomb(c: dict, type_=None, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Evaluate a combination of Compositions, PYWords or ZWords of one family.

    PYWords are read through the run-sorted block form, so any word with a
    rho in its first run can be evaluated; ``type_`` is required for ZWords.
    """
    type_ = TypeTag.parse(type_) if type_ is not None else None
    comps = LinComb()
    for key, coeff in c.items():
        comps.iadd(_key_to_composition(key, type_), coeff)
    out = [0] * (order + 1)
    for comp, coeff in comps.items():
        for i, v in enumerate(_eval_cached(comp.s, comp.t, order)):
            if v:
                out[i] += coeff * v
    return TruncatedSeries(out, order)


def eval_nested_sum(alphas: Sequence[int], betas: Sequence[int], order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Direct enumeration of the duality multi-sum at t = 1.

    Sums  prod_r C(j_r - 1, beta_r - 1) C(k_r - 1, alpha_r - 1)
    q^(k_r (j_r + ... + j_l))  over j_r >= beta_r, k_r >= alpha_r; this is
    the value of R^alpha_1 y^beta_1 ... R^alpha_l y^beta_l at t = 1.
    """
    if len(alphas) != len(betas) or not alphas:
        raise ValueError("need equally many, and at least one, alpha and beta")
    if min(alphas) < 1 or min(betas) < 1:
        raise ValueError("block exponents must be >= 1")
    ell = len(alphas)
    out = [0] * (order + 1)

    # choose j_l, ..., j_1 first (suffix sums), then the k's
    def walk_j(r, js):
        if r < 0:
            js = js[::-1]
            suffix = [0] * (ell + 1)
            for i in range(ell - 1, -1, -1):
                suffix[i] = suffix[i + 1] + js[i]
            base = 1
            for i in range(ell):
                base *= comb(js[i] - 1, betas[i] - 1)
            walk_k(0, 0, base, suffix)
            return
        # minimal exponent contributed by positions <= r with current suffix
        tail = sum(js)
        j = betas[r]
        while True:
            suf = tail + j
            # positions 0..r each need at least alpha_i * suffix_i >= alpha_i * suf
            if sum(alphas[: r + 1]) * suf > order:
                break
            walk_j(r - 1, js + [j])
            j += 1

    def walk_k(i, expo, coeff, suffix):
        if i == ell:
            out[expo] += coeff
            return
        k = alphas[i]
        rest = sum(alphas[i + 1 :][idx] * suffix[i + 1 + idx] for idx in range(ell - i - 1))
        while expo + k * suffix[i] + rest <= order:
            walk_k(i + 1, expo + k * suffix[i], coeff * comb(k - 1, alphas[i] - 1), suffix)
            k += 1

    walk_j(ell - 1, [])
    return TruncatedSeries(out, order)


def brute_force_value(c: Composition, order: int) -> TruncatedSeries:
    """Independent reference: expand every summand directly (slow)."""
    s, t = c.s, c.t
    d = len(s)
    if d == 0:
        return TruncatedSeries.one(order)
    total = TruncatedSeries.zero(order)

    def factor(k, sj, tj):
        geo = [1 if i % k == 0 else 0 for i in range(order + 1)]
        f = TruncatedSeries([1] + [0] * order, order)
        g = TruncatedSeries(geo, order)
        for _ in range(sj):
            f = f * g
        shift = tj * k
        return TruncatedSeries([0] * min(shift, order + 1) + f.coeffs, order)

    def rec(j, upper, acc):
        nonlocal total
        if j == d:
            total = total + acc
            return
        for k in range(1, upper):
            if j == 0 and t[0] * k > order:
                break
            rec(j + 1, k, acc * factor(k, s[j], t[j]))

    rec(0, order + 1, TruncatedSeries.one(order))
    return total
