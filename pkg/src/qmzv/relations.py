"""Relation systems among q-MZVs of one family inside a weight/depth window.

A :class:`RelationSystem` stores sparse rational rows over a fixed basis of
admissible compositions.  Rows come from double shuffles (stuffle minus
shuffle), from duality, from the P-R rewriting ``pi = rho + 1`` (type G), or
from an imported JSON file.  Every row is a true relation among the values,
which :meth:`RelationSystem.check_soundness` verifies numerically.

Window conventions
------------------
``W(w)`` is the set of admissible compositions of weight <= w and depth <= w.
A double shuffle of ``u`` and ``v`` is used when ``u`` lies in ``W(i)`` and
``v`` in ``W(j)`` for some ``i + j <= w``.  A duality ``p = dual(p)`` between
pure words is used when ``p`` fits the family's duality window (see
``DUALITY_WINDOWS``).  Types I and IV have no products of their own here; their
relations are the relations of I~ (resp. IV~) restricted to the smaller basis.
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .core import (
    PI,
    RHO,
    Y,
    Composition,
    LinComb,
    QMZVError,
    TypeTag,
    as_rational,
    composition_of,
    composition_to_zword,
    enumerate_compositions,
    format_rational,
    sort_runs,
    word_of,
    zword_to_composition,
    zword_to_pyword,
)
from .linalg import Echelon
from .qseries import DEFAULT_ORDER, eval_lincomb
from .shuffle import dual, pr_step, shuffle, to_compositions
from .stuffle import stuffle

log = logging.getLogger(__name__)


class BasisEscape(QMZVError):
    """A relation involves a composition outside the basis of the system."""


class NegativeDeficiency(QMZVError):
    """More independent relations than the dimension count allows."""


class ParseError(QMZVError):
    pass


# the parent family whose products and dualities are used
_PARENT = {TypeTag.I: TypeTag.I_TILDE, TypeTag.IV: TypeTag.IV_TILDE}

DUALITY_WINDOWS: dict[TypeTag, Callable[[int, int, int], bool]] = {
    TypeTag.I_TILDE: lambda r, y, w: r + y <= w,
    TypeTag.II: lambda r, y, w: r <= w and y <= w,
    TypeTag.III: lambda r, y, w: r + y <= w + 1,
    TypeTag.IV_TILDE: lambda r, y, w: r + y <= w + 1,
    TypeTag.G: lambda r, y, w: r <= w and y <= w,
}


# --------------------------------------------------------------------------
# systems


@dataclass
class RelationSystem:
    type: TypeTag
    weight: int
    basis: list
    rows: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def __post_init__(self):
        self.type = TypeTag.parse(self.type)
        self.basis = list(self.basis)
        self.index = {c: i for i, c in enumerate(self.basis)}

    @classmethod
    def empty(cls, type_, w: int) -> "RelationSystem":
        return cls(type_, w, enumerate_compositions(type_, w))

    def __len__(self):
        return len(self.rows)

    def words(self) -> list[tuple]:
        return [composition_to_zword(c, self.type) for c in self.basis]

    def vector(self, lc: dict) -> dict:
        row = {}
        for c, v in lc.items():
            i = self.index.get(c)
            if i is None:
                raise BasisEscape(f"{c} is outside the basis")
            row[i] = v
        return row

    def add(self, lc: dict, provenance: str) -> bool:
        """Append a relation given over compositions; drops zero rows."""
        row = self.vector(lc)
        row = {i: v for i, v in row.items() if v}
        if not row:
            return False
        self.rows.append(row)
        self.provenance.append(provenance)
        return True

    def extend(self, other: "RelationSystem", strict: bool = False) -> int:
        """Add the rows of another system, re-indexed into this basis."""
        n = 0
        for row, prov in zip(other.rows, other.provenance):
            lc = {other.basis[i]: v for i, v in row.items()}
            try:
                n += self.add(lc, prov)
            except BasisEscape:
                if strict:
                    raise
                log.info("skipped row %s: outside the basis", prov)
        return n

    def __or__(self, other: "RelationSystem") -> "RelationSystem":
        out = RelationSystem(self.type, self.weight, self.basis, list(self.rows), list(self.provenance))
        out.extend(other)
        return out

    def lincomb(self, k: int) -> LinComb:
        return LinComb((self.basis[i], v) for i, v in self.rows[k].items())

    def echelon(self) -> Echelon:
        e = Echelon()
        e.extend(self.rows)
        return e

    def rank(self) -> int:
        return self.echelon().rank

    def check_soundness(self, order: int = DEFAULT_ORDER) -> list[str]:
        """Provenances of rows whose series do not vanish (empty when sound)."""
        bad = []
        for k in range(len(self.rows)):
            if not eval_lincomb(self.lincomb(k), order=order).is_zero():
                bad.append(self.provenance[k])
        return bad

    # JSON ------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "type": self.type.value,
            "weight": self.weight,
            "basis": [c.to_json() for c in self.basis],
            "rows": [
                {
                    "provenance": p,
                    "coeffs": [[i, format_rational(v)] for i, v in sorted(r.items())],
                }
                for r, p in zip(self.rows, self.provenance)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RelationSystem":
        try:
            basis = [Composition.from_json(b) for b in obj["basis"]]
            sys_ = cls(obj["type"], int(obj["weight"]), basis)
            for r in obj["rows"]:
                row = {int(i): as_rational(v) for i, v in r["coeffs"]}
                if any(i < 0 or i >= len(basis) for i in row):
                    raise ParseError("coefficient index out of range")
                sys_.rows.append({i: v for i, v in row.items() if v})
                sys_.provenance.append("Imported")
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed relation file: {exc}") from exc
        return sys_


def export_relations(sys_: RelationSystem, path) -> None:
    with open(path, "w") as fh:
        json.dump(sys_.to_json(), fh, indent=1)


def import_relations(path) -> RelationSystem:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return RelationSystem.from_json(obj)


# --------------------------------------------------------------------------
# generators


def _span(c: Composition) -> int:
    """Smallest i with c in W(i)."""
    return max(c.weight, c.depth)


def dbsf_pairs(type_, w: int) -> list[tuple[Composition, Composition]]:
    type_ = TypeTag.parse(type_)
    basis = enumerate_compositions(type_, w)
    out = []
    for i, u in enumerate(basis):
        su = _span(u)
        for v in basis[i:]:
            if su + _span(v) <= w:
                out.append((u, v))
    return out


def dbsf_relation(type_: TypeTag, u: Composition, v: Composition) -> LinComb:
    """stuffle(u, v) - shuffle(u, v), over compositions."""
    zu, zv = composition_to_zword(u, type_), composition_to_zword(v, type_)
    st = stuffle(type_, zu, zv).map_keys(lambda z: zword_to_composition(z, type_))
    sh = to_compositions(type_, shuffle(zword_to_pyword(zu, type_), zword_to_pyword(zv, type_)))
    return st - sh


def _dbsf_chunk(args) -> list:
    type_, pairs = args
    return [dbsf_relation(type_, u, v) for u, v in pairs]


def _map_chunks(fn, type_, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 64:
        return fn((type_, items))
    size = max(1, len(items) // (4 * jobs))
    chunks = [(type_, items[k : k + size]) for k in range(0, len(items), size)]
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(fn, chunks):
            out.extend(part)
    return out


def _parent_system(gen, type_, w, **kw) -> RelationSystem:
    parent = gen(_PARENT[type_], w, **kw)
    return project_relations(parent, enumerate_compositions(type_, w), type_=type_)


def gen_dbsf(type_, w: int, jobs: int = 1) -> RelationSystem:
    """Double shuffle relations in the window of weight w."""
    type_ = TypeTag.parse(type_)
    if type_ in _PARENT:
        return _parent_system(gen_dbsf, type_, w, jobs=jobs)
    if type_ is TypeTag.O:
        raise QMZVError("type O has no double shuffle system; see okounkov")
    sys_ = RelationSystem.empty(type_, w)
    pairs = dbsf_pairs(type_, w)
    rels = _map_chunks(_dbsf_chunk, type_, pairs, jobs)
    for (u, v), lc in zip(pairs, rels):
        try:
            sys_.add(lc, f"DBSF({u},{v})")
        except BasisEscape as exc:
            log.info("DBSF(%s,%s) skipped: %s", u, v, exc)
    return sys_


def pure_words(max_rho: int, max_y: int) -> list[str]:
    """Words rho...y over {rho, y} with bounded letter counts, sorted."""
    out = []
    for r in range(1, max_rho + 1):
        for y in range(1, max_y + 1):
            inner = r - 1 + y - 1
            for pos in combinations(range(inner), r - 1):
                letters = [Y] * inner
                for p in pos:
                    letters[p] = RHO
                out.append(RHO + "".join(letters) + Y)
    return sorted(out, key=lambda s: (len(s), s))


def gen_duality(type_, w: int) -> RelationSystem:
    """Duality relations p = dual(p) for pure words in the family's window."""
    type_ = TypeTag.parse(type_)
    if type_ in _PARENT:
        return _parent_system(gen_duality, type_, w)
    if type_ not in DUALITY_WINDOWS:
        raise QMZVError(f"no duality for type {type_}")
    fits = DUALITY_WINDOWS[type_]
    sys_ = RelationSystem.empty(type_, w)
    for p in pure_words(w + 1, w + 1):
        d = dual(p)
        if d <= p or not fits(p.count(RHO), p.count(Y), w):
            continue
        lc = to_compositions(type_, p) - to_compositions(type_, d)
        try:
            sys_.add(lc, f"Duality({p})")
        except BasisEscape as exc:
            log.info("Duality(%s) skipped: %s", p, exc)
    return sys_


def gen_pr(w: int) -> RelationSystem:
    """One P-R step (first pi -> rho + 1) for every type G word with a pi."""
    sys_ = RelationSystem.empty(TypeTag.G, w)
    for c in sys_.basis:
        word = word_of(c)
        if PI not in word:
            continue
        lc = LinComb.of(c) - pr_step(word).map_keys(lambda x: composition_of(sort_runs(x)))
        sys_.add(lc, f"PR({word})")
    return sys_


def gen_all(type_, w: int, jobs: int = 1) -> RelationSystem:
    """Union of every relation family available for the type."""
    type_ = TypeTag.parse(type_)
    if type_ in _PARENT:
        return _parent_system(gen_all, type_, w, jobs=jobs)
    sys_ = gen_dbsf(type_, w, jobs) | gen_duality(type_, w)
    if type_ is TypeTag.G:
        sys_ = sys_ | gen_pr(w)
    return sys_


# --------------------------------------------------------------------------
# ranks and projections


def rank(sys_: RelationSystem | Iterable) -> int:
    if isinstance(sys_, RelationSystem):
        return sys_.rank()
    e = Echelon()
    for s in sys_:
        e.extend(s.rows)
    return e.rank


def project_relations(sys_: RelationSystem, subbasis: Sequence[Composition], type_=None) -> RelationSystem:
    """Relations of ``sys_`` that only involve ``subbasis``.

    The columns outside the subbasis are eliminated first; the echelon rows
    left without any of them span the induced relations.
    """
    type_ = TypeTag.parse(type_) if type_ is not None else sys_.type
    sub = list(subbasis)
    inside = set(sub)
    outside = [c for c in sys_.basis if c not in inside]
    missing = [c for c in sub if c not in sys_.index]
    if missing:
        raise BasisEscape(f"{missing[0]} is not in the basis of the system")
    order = outside + sub
    col = {c: i for i, c in enumerate(order)}
    e = Echelon()
    for row in sys_.rows:
        e.add({col[sys_.basis[i]]: v for i, v in row.items()})
    start = len(outside)
    w = max((c.weight for c in sub), default=0)
    out = RelationSystem(type_, w if type_ is not sys_.type else min(w, sys_.weight), sub)
    for r in e.rows_within(start):
        out.rows.append({k - start: v for k, v in r.items()})
        out.provenance.append("Projected")
    return out


def induced_rank(sys_: RelationSystem, subbasis: Sequence[Composition]) -> int:
    return len(project_relations(sys_, subbasis).rows)


def series_vectors(items, type_=None, order: int = DEFAULT_ORDER) -> list[dict]:
    out = []
    for item in items:
        lc = item if isinstance(item, dict) else {item: 1}
        s = eval_lincomb(lc, type_=type_, order=order)
        out.append({i: c for i, c in enumerate(s.coeffs) if c})
    return out


def dim_lower_bound(words, type_=None, N: int = DEFAULT_ORDER) -> int:
    """Rank of the series coefficients of the words up to q^N."""
    if isinstance(words, (str, TypeTag)):
        raise TypeError("pass a list of words; use window_lower_bound(type, w)")
    e = Echelon()
    e.extend(series_vectors(words, type_=type_, order=N))
    return e.rank


def window_lower_bound(type_, w: int, N: int = DEFAULT_ORDER) -> int:
    return dim_lower_bound(enumerate_compositions(type_, w), N=N)


def _known_rank(type_: TypeTag, w: int, jobs: int, extra: Sequence[RelationSystem]) -> int:
    sys_ = gen_all(type_, w, jobs)
    for imp in extra:
        sys_ = sys_ | project_for(imp, sys_.basis)
    return sys_.rank()


def project_for(imported: RelationSystem, basis: Sequence[Composition]) -> RelationSystem:
    """Relations of ``imported`` that live on (a subset of) ``basis``."""
    sub = [c for c in basis if c in imported.index]
    proj = project_relations(imported, sub)
    out = RelationSystem(imported.type, imported.weight, basis)
    out.extend(proj)
    return out


def deficiency(type_, w: int, N: int = DEFAULT_ORDER, jobs: int = 1, imported=(), lower_bound=None) -> int:
    """#W - lower bound - rank of all known relations in the window."""
    type_ = TypeTag.parse(type_)
    n = len(enumerate_compositions(type_, w))
    lb = window_lower_bound(type_, w, N) if lower_bound is None else lower_bound
    d = n - lb - _known_rank(type_, w, jobs, imported)
    if d < 0:
        raise NegativeDeficiency(f"type {type_.value} weight {w}: deficiency {d} < 0")
    return d


def augmented_deficiency(type_, w: int, delta: int, N: int = DEFAULT_ORDER, jobs: int = 1, imported=(), lower_bound=None) -> int:
    """Deficiency in W(w) using all relations generated in W(w + delta)."""
    type_ = TypeTag.parse(type_)
    if delta < 1:
        raise ValueError("delta must be >= 1")
    window = enumerate_compositions(type_, w)
    big = gen_all(type_, w + delta, jobs)
    for imp in imported:
        big = big | project_for(imp, big.basis)
    r = induced_rank(big, window)
    lb = window_lower_bound(type_, w, N) if lower_bound is None else lower_bound
    d = len(window) - lb - r
    if d < 0:
        raise NegativeDeficiency(f"type {type_.value} weight {w}+{delta}: deficiency {d} < 0")
    return d


# --------------------------------------------------------------------------
# identities


def identity_lincomb(terms: Iterable[dict]) -> LinComb:
    """Identity-file terms ``{"coeff", "s", "t"}`` as a combination of compositions."""
    lc = LinComb()
    for k, term in enumerate(terms):
        try:
            c = Composition.make(term["s"], term["t"])
            coeff = as_rational(term.get("coeff", "1"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"term {k}: {exc}") from exc
        lc.add_term(c, coeff)
    return lc


def verify_identity(lhs_minus_rhs: dict, N: int = DEFAULT_ORDER, type_=None) -> bool:
    """True iff the combination vanishes as a series up to q^N."""
    return eval_lincomb(lhs_minus_rhs, type_=type_, order=N).is_zero()


def residual(lhs_minus_rhs: dict, N: int = DEFAULT_ORDER, type_=None):
    """``(index, coefficient)`` of the first nonzero series term, or None."""
    return eval_lincomb(lhs_minus_rhs, type_=type_, order=N).first_nonzero()


# --------------------------------------------------------------------------
# tables


@dataclass
class TableColumn:
    weight: int
    rows: dict


def table_column(type_, w: int, N: int = DEFAULT_ORDER, delta: int = 0, jobs: int = 1, imported=()) -> TableColumn:
    """One column of the dimension table of a family."""
    type_ = TypeTag.parse(type_)
    basis = enumerate_compositions(type_, w)
    lb = window_lower_bound(type_, w, N)
    rows = {"#W": len(basis), "lower bound": lb}
    if type_ is TypeTag.G:
        ds, du, pr = gen_dbsf(type_, w, jobs), gen_duality(type_, w), gen_pr(w)
        known = ds | du | pr
        total = known.rank()
        rows["DS"] = ds.rank()
        rows["PR \\ (DS u DU)"] = total - rank([ds, du])
        rows["DU \\ (PR u DS)"] = total - rank([pr, ds])
    else:
        ds = gen_dbsf(type_, w, jobs)
        known = gen_all(type_, w, jobs)
        total = known.rank()
        rows["DS"] = ds.rank()
        rows["DU \\ DS"] = total - rows["DS"]
    if imported:
        for imp in imported:
            known = known | project_for(imp, basis)
        total = known.rank()
    d = len(basis) - lb - total
    if d < 0:
        raise NegativeDeficiency(f"type {type_.value} weight {w}: deficiency {d} < 0")
    rows["deficiency"] = d
    if delta:
        rows["deficiency"] = (d, augmented_deficiency(type_, w, delta, N, jobs, imported, lower_bound=lb))
    return TableColumn(w, rows)
