"""Rota-Baxter shuffle on PY words, P-R expansion, typical forms and duality.

The shuffle rules mirror operator identities for the summation operators
P (pi) and R (rho = pi - 1) acting on series in t, with y = t/(1-t):

    (y u) sh v = u sh (y v) = y (u sh v)
    pi u sh pi v   = pi (u sh pi v) + pi (pi u sh v) - pi (u sh v)
    rho u sh rho v = rho (u sh rho v) + rho (rho u sh v) + rho (u sh v)
    rho u sh pi v  = rho (rho u sh v) + rho (u sh rho v) + rho u sh v + rho (u sh v)
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

from .core import (
    PI,
    RHO,
    Y,
    LinComb,
    NotClosable,
    NotPure,
    TypeTag,
    check_pyword,
    composition_of,
    is_pure,
    pure_blocks,
    pure_word,
    sort_runs,
)


def _prefix(letter: str, terms: tuple) -> tuple:
    return tuple((letter + w, c) for w, c in terms)


def _merge(*parts) -> tuple:
    acc: dict = {}
    for sign, terms in parts:
        for w, c in terms:
            v = acc.get(w, 0) + sign * c
            if v:
                acc[w] = v
            else:
                acc.pop(w, None)
    return tuple(acc.items())


@lru_cache(maxsize=1 << 20)
def _sh(u: str, v: str) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    if u > v:
        u, v = v, u
    a, b = u[0], v[0]
    if a == Y:
        return _prefix(Y, _sh(u[1:], v))
    if b == Y:
        return _prefix(Y, _sh(u, v[1:]))
    u1, v1 = u[1:], v[1:]
    if a == PI and b == PI:
        return _prefix(PI, _merge((1, _sh(u1, v)), (1, _sh(u, v1)), (-1, _sh(u1, v1))))
    if a == RHO and b == RHO:
        return _prefix(RHO, _merge((1, _sh(u1, v)), (1, _sh(u, v1)), (1, _sh(u1, v1))))
    # mixed: put the rho-word first
    if a == PI:
        u, v, u1, v1 = v, u, v1, u1
    # u = rho u1, v = pi v1
    inside = _merge((1, _sh(u, v1)), (1, _sh(u1, RHO + v1)), (1, _sh(u1, v1)))
    return _merge((1, _prefix(RHO, inside)), (1, _sh(u, v1)))


def shuffle(u: str, v: str) -> LinComb:
    """q-shuffle product of two PY words."""
    check_pyword(u)
    check_pyword(v)
    return LinComb(_sh(u, v))


def shuffle_lincomb(a: dict, b: dict) -> LinComb:
    out = LinComb()
    for u, cu in a.items():
        for v, cv in b.items():
            out.iadd(LinComb(_sh(u, v)), cu * cv)
    return out


@lru_cache(maxsize=1 << 16)
def _pr_word(word: str) -> tuple:
    if PI not in word:
        return ((word, 1),)
    i = word.index(PI)
    head, tail = word[:i], word[i + 1 :]
    return _merge((1, _pr_word(head + RHO + tail)), (1, _pr_word(head + tail)))


def pr_expand(c) -> LinComb:
    """Eliminate every pi through pi = rho + 1."""
    if isinstance(c, str):
        check_pyword(c)
        return LinComb(_pr_word(c))
    out = LinComb()
    for w, coeff in c.items():
        out.iadd(LinComb(_pr_word(w)), coeff)
    return out


def pr_step(word: str) -> LinComb:
    """Replace the first pi of a word by rho + 1 (one P-R relation)."""
    i = word.index(PI)
    return LinComb([(word[:i] + RHO + word[i + 1 :], 1), (word[:i] + word[i + 1 :], 1)])


# --------------------------------------------------------------------------
# typical forms.  Each family writes a pure block rho^n y in its own block
# basis; the maps below are the inverses of the (unitriangular) expansions
# of those blocks under pi = rho + 1.


def _i_head_block(n: int) -> tuple:
    """rho^n y in the span of theta = rho y and z_s = rho^(s-1) pi y."""
    if n == 0:
        # gamma = z_1 - theta
        return (((0, 1), 1), ((1, 1), -1))
    if n == 1:
        return (((1, 1), 1),)
    terms = [((n - j, n - j + 1), (-1) ** (j - 1)) for j in range(1, n)]
    terms.append(((1, 1), (-1) ** (n - 1)))
    return tuple(terms)


def _ii_block(n: int) -> tuple:
    return (((n, n), 1),)


def _iii_head_block(n: int) -> tuple:
    # rho^n = (pi - 1)^(n-1) rho  ->  sum_i C(n-1, i) (-1)^(n-1-i) pi^i rho
    return tuple(((1, i + 1), comb(n - 1, i) * (-1) ** (n - 1 - i)) for i in range(n))


def _iii_tail_block(n: int) -> tuple:
    return tuple(((0, i), comb(n, i) * (-1) ** (n - i)) for i in range(n + 1))


_BLOCK_MAPS = {
    TypeTag.I_TILDE: (_i_head_block, _i_head_block),
    TypeTag.II: (_ii_block, _ii_block),
    TypeTag.III: (_iii_head_block, _iii_tail_block),
    TypeTag.IV_TILDE: (_i_head_block, _ii_block),
}


def _typical_from_pure(type_: TypeTag, blocks: tuple) -> LinComb:
    head_map, tail_map = _BLOCK_MAPS[type_]
    if not blocks or blocks[0] < 1:
        raise NotClosable(f"{pure_word(blocks)} has no rho before its first y")
    acc = {(): 1}
    for i, n in enumerate(blocks):
        choices = (head_map if i == 0 else tail_map)(n)
        nxt: dict = {}
        for prefix, c in acc.items():
            for blk, c2 in choices:
                key = prefix + (blk,)
                nxt[key] = nxt.get(key, 0) + c * c2
        acc = {k: v for k, v in nxt.items() if v}
    out = LinComb()
    for blks, c in acc.items():
        out.add_term("".join(RHO * t + PI * (s - t) + Y for t, s in blks), c)
    return out


def normalize_typical(type_, c) -> LinComb:
    """Rewrite a combination of PY words in the typical form of a family.

    For type G this only sorts runs into block form; the other families are
    rewritten block by block through their pi-free expansions.  Type I and
    IV words are written in the I~ / IV~ forms.
    """
    type_ = TypeTag.parse(type_)
    if isinstance(c, str):
        c = LinComb.of(c)
    out = LinComb()
    if type_ is TypeTag.G:
        for w, coeff in c.items():
            if not w.endswith(Y) or RHO not in w.split(Y, 1)[0]:
                raise NotClosable(f"{w!r} is not a type G word")
            out.add_term(sort_runs(w), coeff)
        return out
    if type_ is TypeTag.I:
        type_ = TypeTag.I_TILDE
    elif type_ is TypeTag.IV:
        type_ = TypeTag.IV_TILDE
    if type_ not in _BLOCK_MAPS:
        raise NotClosable(f"no typical form for type {type_}")
    for w, coeff in pr_expand(c).items():
        if not w.endswith(Y):
            raise NotClosable(f"{w!r} does not end with y")
        out.iadd(_typical_from_pure(type_, pure_blocks(w)), coeff)
    return out


def to_compositions(type_, c) -> LinComb:
    """Typical form of ``c`` read as a combination of Compositions."""
    return normalize_typical(type_, c).map_keys(composition_of)


# --------------------------------------------------------------------------
# duality


def block_form(word: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(alphas, betas)`` of a pure word rho^a1 y^b1 ... rho^al y^bl."""
    if not is_pure(word):
        raise NotPure(f"{word!r} contains pi")
    if not word or word[0] != RHO or word[-1] != Y:
        raise NotPure(f"{word!r} must start with rho and end with y")
    alphas, betas = [], []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == RHO:
            j += 1
        k = j
        while k < len(word) and word[k] == Y:
            k += 1
        alphas.append(j - i)
        betas.append(k - j)
        i = k
    return tuple(alphas), tuple(betas)


def from_block_form(alphas, betas) -> str:
    return "".join(RHO * a + Y * b for a, b in zip(alphas, betas))


_SWAP = str.maketrans({RHO: Y, Y: RHO})


def dual(word: str) -> str:
    """Reverse the word and swap rho <-> y."""
    if PI in word:
        raise NotPure(f"{word!r} contains pi; apply pr_expand first")
    if not word or word[0] != RHO or word[-1] != Y:
        raise NotPure(f"{word!r} must start with rho and end with y")
    return word[::-1].translate(_SWAP)


def dual_lincomb(c: dict) -> LinComb:
    return pr_expand(c).map_keys(dual)

