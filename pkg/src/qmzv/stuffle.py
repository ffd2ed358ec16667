"""Quasi-shuffle (stuffle) products of the q-MZV families.

All products share one recursion

    (a u) * (b v) = a (u *' sigma(b v)) + b (sigma(a u) *' v) + [a, b] (u *' v)

where ``*'`` is the quasi-shuffle of the tail alphabet and ``sigma`` rewrites
a word whose first letter moves from the leading position into the tail.
Families whose first letter is realised like the others (I~, II, G, O) use
``*' = *`` and ``sigma = id``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import (
    THETA,
    LinComb,
    TypeTag,
    TypeMismatch,
    Z,
    ZG,
    ZO,
    ZP,
    Letter,
    check_admissible,
)

HALF = Fraction(1, 2)


def _bracket_i(a: Letter, b: Letter) -> tuple:
    if a == THETA and b == THETA:
        return ((Z(2), 1), (THETA, -1))
    if a == THETA:
        return ((Z(b.s + 1), 1),)
    if b == THETA:
        return ((Z(a.s + 1), 1),)
    return ((Z(a.s + b.s), 1), (Z(a.s + b.s - 1), 1))


def _bracket_zp(a: Letter, b: Letter) -> tuple:
    return ((ZP(a.s + b.s), 1),)


def _bracket_z(a: Letter, b: Letter) -> tuple:
    return ((Z(a.s + b.s), 1),)


def _bracket_g(a: Letter, b: Letter) -> tuple:
    return ((ZG(a.t + b.t, a.s + b.s), 1),)


def _bracket_o(a: Letter, b: Letter) -> tuple:
    r, s = a.s, b.s
    if r % 2 and s % 2:
        return ((ZO(r + s), 2), (ZO(r + s - 2), HALF))
    return ((ZO(r + s), 2),)


# tail alphabets
_TAIL_BRACKET = {
    TypeTag.I_TILDE: _bracket_i,
    TypeTag.II: _bracket_zp,
    TypeTag.III: _bracket_z,
    TypeTag.IV_TILDE: _bracket_zp,
    TypeTag.G: _bracket_g,
    TypeTag.O: _bracket_o,
}


def _head_bracket_iii(a: Letter, b: Letter) -> tuple:
    n = a.s + b.s
    return ((ZP(n), 1), (ZP(n - 1), -1))


def _head_bracket_iv(a: Letter, b: Letter) -> tuple:
    if a == THETA and b == THETA:
        return ((Z(2), 1), (THETA, -1))
    if a == THETA:
        return ((Z(b.s + 1), 1),)
    if b == THETA:
        return ((Z(a.s + 1), 1),)
    n = a.s + b.s
    return ((Z(n), 1), (Z(n - 1), 1))


def _sigma_iii(a: Letter) -> tuple:
    # sigma_-(z'_n w) = z_n w - z_{n-1} w
    return ((Z(a.s), 1), (Z(a.s - 1), -1))


def _sigma_iv(a: Letter) -> tuple:
    # sigma_+(z_n w) = z'_n w + z'_{n-1} w; a leading theta is already z'_1
    if a == THETA:
        return ((ZP(1), 1),)
    return ((ZP(a.s), 1), (ZP(a.s - 1), 1))


_HEAD = {
    TypeTag.III: (_head_bracket_iii, _sigma_iii),
    TypeTag.IV_TILDE: (_head_bracket_iv, _sigma_iv),
}


def _merge(acc: dict, terms, scale=1, prefix=()) -> None:
    for w, c in terms:
        key = prefix + w
        v = acc.get(key, 0) + c * scale
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


@lru_cache(maxsize=1 << 20)
def _qsh(tag: TypeTag, u: tuple, v: tuple) -> tuple:
    """Plain quasi-shuffle with the tail bracket of ``tag``."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    if u > v:
        u, v = v, u
    a, b = u[0], v[0]
    acc: dict = {}
    _merge(acc, _qsh(tag, u[1:], v), prefix=(a,))
    _merge(acc, _qsh(tag, u, v[1:]), prefix=(b,))
    rest = _qsh(tag, u[1:], v[1:])
    for letter, c in _TAIL_BRACKET[tag](a, b):
        _merge(acc, rest, scale=c, prefix=(letter,))
    return tuple(acc.items())


def _sigma_word(sigma, w: tuple) -> tuple:
    return tuple(((letter,) + w[1:], c) for letter, c in sigma(w[0]))


def _qsh_lc(tag, left, right) -> dict:
    acc: dict = {}
    for u, cu in left:
        for v, cv in right:
            _merge(acc, _qsh(tag, u, v), scale=cu * cv)
    return acc


@lru_cache(maxsize=1 << 18)
def _head_product(tag: TypeTag, u: tuple, v: tuple) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    bracket, sigma = _HEAD[tag]
    a, b = u[0], v[0]
    acc: dict = {}
    _merge(acc, _qsh_lc(tag, [(u[1:], 1)], _sigma_word(sigma, v)).items(), prefix=(a,))
    _merge(acc, _qsh_lc(tag, _sigma_word(sigma, u), [(v[1:], 1)]).items(), prefix=(b,))
    rest = _qsh(tag, u[1:], v[1:])
    for letter, c in bracket(a, b):
        _merge(acc, rest, scale=c, prefix=(letter,))
    return tuple(acc.items())


def _family(type_: TypeTag, u: tuple, v: tuple) -> TypeTag:
    if type_ is TypeTag.I:
        return TypeTag.I_TILDE
    if type_ is TypeTag.IV:
        return TypeTag.IV_TILDE
    return type_


def stuffle(type_, u: tuple, v: tuple) -> LinComb:
    """Stuffle product of two admissible ZWords of one family."""
    type_ = TypeTag.parse(type_)
    u, v = tuple(u), tuple(v)
    kinds = {a.kind for a in u + v}
    allowed = {
        TypeTag.I: {"z"},
        TypeTag.I_TILDE: {"z", "theta"},
        TypeTag.II: {"zp"},
        TypeTag.III: {"z", "zp"},
        TypeTag.IV: {"z", "zp"},
        TypeTag.IV_TILDE: {"z", "zp", "theta"},
        TypeTag.G: {"g"},
        TypeTag.O: {"o"},
    }[type_]
    if not kinds <= allowed:
        raise TypeMismatch(f"letters {sorted(kinds)} do not belong to type {type_}")
    check_admissible(u, type_)
    check_admissible(v, type_)
    tag = _family(type_, u, v)
    if tag in _HEAD:
        if u > v:
            u, v = v, u
        return LinComb(_head_product(tag, u, v))
    return LinComb(_qsh(tag, u, v))


def stuffle_O(u, v) -> LinComb:
    """Stuffle of type O words, given as ZWords or as tuples of integers."""
    def as_word(x):
        return tuple(a if isinstance(a, Letter) else ZO(int(a)) for a in x)

    return stuffle(TypeTag.O, as_word(u), as_word(v))


def stuffle_lincomb(type_, a: dict, b: dict) -> LinComb:
    out = LinComb()
    for u, cu in a.items():
        for v, cv in b.items():
            out.iadd(stuffle(type_, u, v), cu * cv)
    return out
