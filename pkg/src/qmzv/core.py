"""Words, alphabets, compositions and exact linear combinations.

Two word models are used throughout the package:

* ``PYWord`` -- a plain ``str`` over the letters ``"r"`` (rho, the remainder
  summation operator), ``"p"`` (pi, the principal summation operator) and
  ``"y"`` (multiplication by t/(1-t)).  These carry the shuffle product.
* ``ZWord`` -- a tuple of :class:`Letter` over one of the stuffle alphabets.

Every admissible word of every family is finally identified with a
:class:`Composition` ``(s, t)`` describing the nested sum

    sum_{k_1 > ... > k_d > 0} prod_j q^{t_j k_j} / (1 - q^{k_j})^{s_j}.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, NamedTuple

RHO = "r"
PI = "p"
Y = "y"
PY_LETTERS = frozenset(RHO + PI + Y)

_PRETTY = {RHO: "ρ", PI: "π", Y: "y"}


class QMZVError(ValueError):
    """Base class for all domain errors raised by the package."""


class NotBlockForm(QMZVError):
    pass


class Inadmissible(QMZVError):
    pass


class TypeMismatch(QMZVError):
    pass


class UnsupportedLetter(QMZVError):
    pass


class NotPure(QMZVError):
    pass


class NotClosable(QMZVError):
    pass


class Divergent(QMZVError):
    pass


class NegativeArgument(QMZVError):
    pass


class ArgumentTooSmall(QMZVError):
    pass


class TypeTag(enum.Enum):
    """The q-MZV families.  Values are the CLI spellings."""

    I = "i"
    I_TILDE = "i~"
    II = "ii"
    III = "iii"
    IV = "iv"
    IV_TILDE = "iv~"
    G = "g"
    O = "o"

    @classmethod
    def parse(cls, value: "str | TypeTag") -> "TypeTag":
        if isinstance(value, TypeTag):
            return value
        key = value.strip().lower()
        aliases = {"it": "i~", "ti": "i~", "ivt": "iv~", "tiv": "iv~", "2": "ii", "3": "iii"}
        key = aliases.get(key, key)
        for tag in cls:
            if tag.value == key:
                return tag
        raise ValueError(f"unknown q-MZV type {value!r}")

    def __str__(self) -> str:
        return self.value


# --------------------------------------------------------------------------
# exact rationals and linear combinations


def as_rational(x) -> "int | Fraction":
    """Parse ``"p/q"``, ints or Fractions into an exact rational."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        f = Fraction(x.strip())
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class LinComb(dict):
    """A finitely supported map ``word -> rational`` with no zero entries.

    Scalars stay Python ints as long as possible; Fractions appear only when
    a division actually happens.
    """

    def __init__(self, data=None):
        super().__init__()
        if data is None:
            return
        items = data.items() if isinstance(data, dict) else data
        for key, c in items:
            self.add_term(key, c)

    @classmethod
    def of(cls, word, coeff=1) -> "LinComb":
        lc = cls()
        lc.add_term(word, coeff)
        return lc

    def add_term(self, key, c) -> None:
        if not c:
            return
        v = self.get(key, 0) + c
        if v:
            self[key] = v
        else:
            self.pop(key, None)

    def iadd(self, other, scale=1) -> "LinComb":
        if not scale:
            return self
        for key, c in other.items():
            self.add_term(key, c * scale)
        return self

    def __add__(self, other):
        return LinComb(self).iadd(other)

    def __sub__(self, other):
        return LinComb(self).iadd(other, -1)

    def __neg__(self):
        return LinComb((k, -c) for k, c in self.items())

    def __mul__(self, scalar):
        return LinComb((k, c * scalar) for k, c in self.items())

    __rmul__ = __mul__

    def map_keys(self, fn) -> "LinComb":
        return LinComb((fn(k), c) for k, c in self.items())

    def map_linear(self, fn) -> "LinComb":
        """Extend ``fn: key -> LinComb`` linearly."""
        out = LinComb()
        for key, c in self.items():
            out.iadd(fn(key), c)
        return out

    def __repr__(self) -> str:
        if not self:
            return "0"
        return " + ".join(f"{format_rational(c)}*{k!r}" for k, c in self.items())


# --------------------------------------------------------------------------
# compositions


class Composition(NamedTuple):
    """Exponent data ``(s, t)`` of the nested sum; both tuples have length d."""

    s: tuple
    t: tuple

    @classmethod
    def make(cls, s: Iterable[int], t: Iterable[int]) -> "Composition":
        s, t = tuple(int(x) for x in s), tuple(int(x) for x in t)
        if len(s) != len(t):
            raise ValueError("s and t must have the same length")
        return cls(s, t)

    @property
    def weight(self) -> int:
        return sum(self.s)

    @property
    def depth(self) -> int:
        return len(self.s)

    def blocks(self) -> Iterator[tuple[int, int]]:
        """Yield ``(t_j, s_j)`` pairs."""
        return zip(self.t, self.s)

    def is_g_admissible(self) -> bool:
        if not self.s:
            return False
        if not 1 <= self.t[0] <= self.s[0]:
            return False
        return all(0 <= tj <= sj for tj, sj in zip(self.t[1:], self.s[1:]))

    def sort_key(self) -> tuple:
        flat = tuple(x for pair in self.blocks() for x in pair)
        return (self.weight, self.depth, flat)

    def to_json(self) -> dict:
        return {"s": list(self.s), "t": list(self.t)}

    @classmethod
    def from_json(cls, obj) -> "Composition":
        return cls.make(obj["s"], obj["t"])

    def __str__(self) -> str:
        return f"z^{tuple(self.t)}[{', '.join(map(str, self.s))}]"


EMPTY = Composition((), ())


def canonical_order(comps: Iterable[Composition]) -> list[Composition]:
    return sorted(comps, key=Composition.sort_key)


# --------------------------------------------------------------------------
# PY words


def pretty(word: str) -> str:
    return "".join(_PRETTY[c] for c in word) if word else "1"


def parse_pyword(text: str) -> str:
    """Accept ``"rpy"`` or ``"ρπy"`` spellings (and exponent-free repeats)."""
    table = {"ρ": RHO, "π": PI, "r": RHO, "p": PI, "y": Y}
    out = []
    for ch in text.strip():
        if ch.isspace():
            continue
        if ch in ("δ", "d"):
            raise UnsupportedLetter("letter delta is not supported")
        if ch not in table:
            raise ValueError(f"unknown PY letter {ch!r}")
        out.append(table[ch])
    return "".join(out)


def check_pyword(word: str) -> None:
    bad = set(word) - PY_LETTERS
    if bad:
        raise UnsupportedLetter(f"unsupported letters {sorted(bad)!r} in {word!r}")


def runs(word: str) -> list[str]:
    """Split a word into the non-y runs preceding each y.

    A trailing run that is not terminated by ``y`` is returned as the last
    element (it is empty for words ending in ``y``).
    """
    return word.split(Y)


def py_weight(word: str) -> int:
    return len(word) - word.count(Y)


def py_depth(word: str) -> int:
    return word.count(Y)


def is_pure(word: str) -> bool:
    return PI not in word


def is_block_form(word: str) -> bool:
    parts = runs(word)
    if parts[-1]:
        return False
    return all(RHO not in run.lstrip(RHO) for run in parts[:-1])


def is_g_admissible_word(word: str) -> bool:
    """Ends with y and has at least one rho before the first y."""
    return bool(word) and word.endswith(Y) and RHO in word.split(Y, 1)[0]


def word_of(c: Composition) -> str:
    parts = []
    for tj, sj in c.blocks():
        if not 0 <= tj <= sj:
            raise Inadmissible(f"block (t={tj}, s={sj}) has t outside [0, s]")
        parts.append(RHO * tj + PI * (sj - tj) + Y)
    return "".join(parts)


def composition_of(word: str) -> Composition:
    check_pyword(word)
    if not is_block_form(word):
        raise NotBlockForm(f"{pretty(word)} is not a product of blocks rho^t pi^(s-t) y")
    s, t = [], []
    for run in runs(word)[:-1]:
        s.append(len(run))
        t.append(run.count(RHO))
    return Composition(tuple(s), tuple(t))


def sort_runs(word: str) -> str:
    """Move every rho of a run in front of its pi's.

    The summation operators commute, so this does not change the value.
    """
    parts = runs(word)
    return Y.join(RHO * run.count(RHO) + PI * run.count(PI) for run in parts)


def pure_blocks(word: str) -> tuple[int, ...]:
    """Run lengths of a pi-free word that ends with y."""
    if PI in word:
        raise NotPure(f"{pretty(word)} contains pi")
    parts = runs(word)
    if parts[-1]:
        raise NotPure(f"{pretty(word)} does not end with y")
    return tuple(len(run) for run in parts[:-1])


def pure_word(blocks: Iterable[int]) -> str:
    return "".join(RHO * n + Y for n in blocks)


# --------------------------------------------------------------------------
# stuffle letters


class Letter(NamedTuple):
    """A stuffle letter.  ``kind`` is one of theta, z, zp, g, o.

    ``s`` is the weight of the letter; ``t`` is only used by type G letters.
    """

    kind: str
    s: int
    t: int = 0

    def __repr__(self) -> str:
        if self.kind == "theta":
            return "θ"
        if self.kind == "z":
            return f"z{self.s}"
        if self.kind == "zp":
            return f"z'{self.s}"
        if self.kind == "g":
            return f"z({self.t},{self.s})"
        return f"zO{self.s}"


THETA = Letter("theta", 1)


def Z(k: int) -> Letter:
    return Letter("z", k)


def ZP(k: int) -> Letter:
    return Letter("zp", k)


def ZG(t: int, s: int) -> Letter:
    if not 0 <= t <= s:
        raise Inadmissible(f"z_(t={t}, s={s}) needs 0 <= t <= s")
    return Letter("g", s, t)


def ZO(s: int) -> Letter:
    if s < 2:
        raise ArgumentTooSmall(f"type O letters need s >= 2, got {s}")
    return Letter("o", s)


def gamma_lincomb() -> LinComb:
    """gamma = z_1 - theta as a combination of one-letter words."""
    return LinComb([((Z(1),), 1), ((THETA,), -1)])


def weight(w) -> int:
    if isinstance(w, Composition):
        return w.weight
    if isinstance(w, str):
        return py_weight(w)
    return sum(letter.s for letter in w)


def depth(w) -> int:
    if isinstance(w, Composition):
        return w.depth
    if isinstance(w, str):
        return py_depth(w)
    return len(w)


# head and tail letter kinds per family; III and IV~ realise the first letter
# differently from the others
_HEAD_OK = {
    TypeTag.I: lambda a: a.kind == "z" and a.s >= 2,
    TypeTag.I_TILDE: lambda a: a == THETA or (a.kind == "z" and a.s >= 2),
    TypeTag.II: lambda a: a.kind == "zp" and a.s >= 1,
    TypeTag.III: lambda a: a.kind == "zp" and a.s >= 1,
    TypeTag.IV: lambda a: a.kind == "z" and a.s >= 2,
    TypeTag.IV_TILDE: lambda a: a == THETA or (a.kind == "z" and a.s >= 2),
    TypeTag.G: lambda a: a.kind == "g" and 1 <= a.t <= a.s,
    TypeTag.O: lambda a: a.kind == "o" and a.s >= 2,
}
_TAIL_OK = {
    TypeTag.I: lambda a: a.kind == "z" and a.s >= 1,
    TypeTag.I_TILDE: lambda a: a == THETA or (a.kind == "z" and a.s >= 1),
    TypeTag.II: lambda a: a.kind == "zp" and a.s >= 0,
    TypeTag.III: lambda a: a.kind == "z" and a.s >= 0,
    TypeTag.IV: lambda a: a.kind == "zp" and a.s >= 0,
    TypeTag.IV_TILDE: lambda a: a.kind == "zp" and a.s >= 0,
    TypeTag.G: lambda a: a.kind == "g" and 0 <= a.t <= a.s,
    TypeTag.O: lambda a: a.kind == "o" and a.s >= 2,
}


def is_admissible(word: tuple, type_: TypeTag) -> bool:
    """Admissibility of a non-empty ZWord; the empty word is the unit."""
    if not word:
        return True
    return _HEAD_OK[type_](word[0]) and all(_TAIL_OK[type_](a) for a in word[1:])


def check_admissible(word: tuple, type_: TypeTag) -> None:
    if not is_admissible(word, type_):
        raise Inadmissible(f"{word!r} is not type {type_}-admissible")


def _letter_block(letter: Letter, type_: TypeTag, head: bool) -> tuple[int, int]:
    """(t, s) of one letter."""
    k = letter.kind
    if k == "theta":
        return (1, 1)
    if k == "g":
        return (letter.t, letter.s)
    if type_ in (TypeTag.I, TypeTag.I_TILDE):
        return (letter.s - 1, letter.s)
    if type_ is TypeTag.II:
        return (letter.s, letter.s)
    if type_ is TypeTag.III:
        return (1, letter.s) if head else (0, letter.s)
    if type_ in (TypeTag.IV, TypeTag.IV_TILDE):
        return (letter.s - 1, letter.s) if head else (letter.s, letter.s)
    raise TypeMismatch(f"letter {letter!r} has no composition in type {type_}")


def zword_to_composition(word: tuple, type_) -> Composition:
    type_ = TypeTag.parse(type_)
    if type_ is TypeTag.O:
        raise TypeMismatch("type O values are sums of compositions; use okounkov.oword_expand")
    check_admissible(word, type_)
    t, s = [], []
    for i, letter in enumerate(word):
        tj, sj = _letter_block(letter, type_, head=(i == 0))
        t.append(tj)
        s.append(sj)
    return Composition(tuple(s), tuple(t))


def composition_to_zword(c: Composition, type_) -> tuple:
    """Inverse of :func:`zword_to_composition` on admissible compositions."""
    type_ = TypeTag.parse(type_)
    letters = []
    for i, (tj, sj) in enumerate(c.blocks()):
        head = i == 0
        theta_ok = type_ is TypeTag.I_TILDE or (head and type_ is TypeTag.IV_TILDE)
        if type_ is TypeTag.G:
            letters.append(ZG(tj, sj))
        elif type_ in (TypeTag.I, TypeTag.I_TILDE) or (
            head and type_ in (TypeTag.IV, TypeTag.IV_TILDE)
        ):
            if theta_ok and (tj, sj) == (1, 1):
                letters.append(THETA)
            elif tj == sj - 1:
                letters.append(Z(sj))
            else:
                raise Inadmissible(f"{c} is not of type {type_}")
        elif type_ in (TypeTag.II, TypeTag.IV, TypeTag.IV_TILDE):
            if tj != sj:
                raise Inadmissible(f"{c} is not of type {type_}")
            letters.append(ZP(sj))
        elif type_ is TypeTag.III:
            if head and tj == 1:
                letters.append(ZP(sj))
            elif not head and tj == 0:
                letters.append(Z(sj))
            else:
                raise Inadmissible(f"{c} is not of type III")
        else:
            raise TypeMismatch(f"no ZWord encoding of compositions for type {type_}")
    word = tuple(letters)
    check_admissible(word, type_)
    return word


def zword_to_pyword(word: tuple, type_) -> str:
    """Typical-form PY word of a ZWord (block form, rho's first)."""
    return word_of(zword_to_composition(word, type_))


# --------------------------------------------------------------------------
# enumeration of admissible compositions


def _tail_choices(type_: TypeTag, s: int) -> list[int]:
    """Allowed t for a non-initial block of argument s."""
    if type_ in (TypeTag.I, TypeTag.I_TILDE):
        opts = [s - 1] if s >= 1 else []
        if type_ is TypeTag.I_TILDE and s == 1:
            opts.append(1)
        return opts
    if type_ in (TypeTag.II, TypeTag.IV, TypeTag.IV_TILDE):
        return [s]
    if type_ is TypeTag.III:
        return [0]
    if type_ is TypeTag.G:
        return list(range(s + 1))
    raise TypeMismatch(type_)


def _head_choices(type_: TypeTag, s: int) -> list[int]:
    if s < 1:
        return []
    if type_ in (TypeTag.I, TypeTag.IV):
        return [s - 1] if s >= 2 else []
    if type_ in (TypeTag.I_TILDE, TypeTag.IV_TILDE):
        return [1] if s == 1 else [s - 1]
    if type_ is TypeTag.II:
        return [s]
    if type_ is TypeTag.III:
        return [1]
    if type_ is TypeTag.G:
        return list(range(1, s + 1))
    raise TypeMismatch(type_)


def _min_tail(type_: TypeTag) -> int:
    return 1 if type_ in (TypeTag.I, TypeTag.I_TILDE) else 0


def enumerate_compositions(type_, w: int) -> list[Composition]:
    """Admissible compositions of weight <= w and depth <= w, canonical order."""
    type_ = TypeTag.parse(type_)
    if type_ is TypeTag.O:
        raise TypeMismatch("use okounkov.enumerate_o for type O")
    out = []
    lo = _min_tail(type_)

    def tails(budget, slots):
        yield ()
        if slots == 0:
            return
        for s in range(lo, budget + 1):
            for rest in tails(budget - s, slots - 1):
                yield (s,) + rest

    for s1 in range(1, w + 1):
        for rest in tails(w - s1, w - 1):
            s = (s1,) + rest
            choices = [_head_choices(type_, s1)] + [_tail_choices(type_, x) for x in rest]
            for t in product(*choices):
                out.append(Composition(s, tuple(t)))
    return canonical_order(out)


def enumerate_admissible(type_, w: int) -> list[tuple]:
    """Admissible ZWords of weight and depth <= w, in canonical order."""
    type_ = TypeTag.parse(type_)
    if type_ is TypeTag.O:
        from .okounkov import enumerate_o

        return [tuple(ZO(x) for x in s) for s in enumerate_o(w)]
    return [composition_to_zword(c, type_) for c in enumerate_compositions(type_, w)]
