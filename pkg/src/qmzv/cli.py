"""Command line front end (``qmzv``)."""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from math import comb
from pathlib import Path

from .core import (
    THETA,
    QMZVError,
    TypeTag,
    Z,
    ZG,
    ZO,
    ZP,
    check_admissible,
    composition_of,
    enumerate_admissible,
    format_rational,
    parse_pyword,
    pretty,
    weight,
    zword_to_composition,
)
from .okounkov import enumerate_o, eval_o, verify_okounkov
from .qseries import DEFAULT_ORDER, eval_lincomb, eval_value
from .relations import (
    ParseError,
    export_relations,
    gen_all,
    identity_lincomb,
    import_relations,
    residual,
    table_column,
)
from .shuffle import dual, shuffle
from .stuffle import stuffle

TYPE_CHOICES = [t.value for t in TypeTag]
BUNDLED = ("missing_relations_tI.json", "missing_relations_ii_iii.json", "okounkov_w6_9.json")


@dataclass
class CliConfig:
    type: TypeTag | None = None
    weight: int = 1
    order: int = DEFAULT_ORDER
    delta: int = 0
    format: str = "text"
    jobs: int = 1
    imports: list[Path] = field(default_factory=list)
    out: Path | None = None

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError("weight must be >= 1")
        if self.order < 1:
            raise ValueError("order must be >= 1")

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "CliConfig":
        t = getattr(ns, "type", None)
        return cls(
            type=TypeTag.parse(t) if t else None,
            weight=getattr(ns, "weight", None) or 1,
            order=ns.order,
            delta=getattr(ns, "delta", 0) or 0,
            format=ns.format,
            jobs=ns.jobs,
            imports=[Path(p) for p in getattr(ns, "imports", None) or []],
            out=Path(ns.out) if getattr(ns, "out", None) else None,
        )


# --------------------------------------------------------------------------
# closed forms for the word counts


def _fib(n: int) -> int:
    a, b = 1, 1  # F_0 = F_1 = 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _g_count(w: int) -> int:
    # sum over (x_1, ..., x_d) of x_1 * ... * x_d where x_1 = s_1 counts the
    # head choices and x_j = s_j + 1 the tail choices; weight = sum x - (d-1)
    total = 0
    # ways[n] = sum of products over compositions of n into parts >= 1
    ways = [0] * (2 * w + 1)
    ways[0] = 1
    for d in range(1, w + 1):
        nxt = [0] * (2 * w + 1)
        for n, c in enumerate(ways):
            if c:
                for x in range(1, 2 * w + 1 - n):
                    nxt[n + x] += c * x
        ways = nxt
        total += sum(c for n, c in enumerate(ways) if n - (d - 1) <= w)
    return total


def closed_form_count(type_: TypeTag, w: int) -> int:
    if type_ is TypeTag.I_TILDE:
        return _fib(2 * w) - 1
    if type_ is TypeTag.I:
        return 2 ** (w - 1) - 1
    if type_ in (TypeTag.II, TypeTag.III, TypeTag.IV_TILDE):
        return comb(2 * w, w) - 1
    if type_ is TypeTag.IV:
        return comb(2 * w - 1, w) - 1
    if type_ is TypeTag.G:
        return _g_count(w)
    # compositions into parts >= 2 of total <= w: partial sums of Fibonacci
    return sum(_fib(n - 2) for n in range(2, w + 1))


# --------------------------------------------------------------------------
# word syntax
#
# A word is a comma separated list of subscripts read in the family's own
# alphabet, e.g. ``--type ii 1,0,3`` is z'_1 z'_0 z'_3 and ``--type iii 2,0``
# is z'_2 z_0.  ``th`` (or the Greek letter) is theta; type G letters are
# written ``t/s``.


def parse_zword(type_: TypeTag, text: str) -> tuple:
    tokens = [tok.strip() for tok in text.split(",") if tok.strip()]
    out = []
    for pos, tok in enumerate(tokens):
        if tok in ("th", "theta", "θ"):
            out.append(THETA)
            continue
        if type_ is TypeTag.G:
            t, _, s = tok.partition("/")
            out.append(ZG(int(t), int(s)))
            continue
        k = int(tok)
        if type_ is TypeTag.O:
            out.append(ZO(k))
        elif type_ is TypeTag.II:
            out.append(ZP(k))
        elif type_ is TypeTag.III:
            out.append(ZP(k) if pos == 0 else Z(k))
        elif type_ in (TypeTag.IV, TypeTag.IV_TILDE):
            out.append(Z(k) if pos == 0 else ZP(k))
        else:
            out.append(Z(k))
    word = tuple(out)
    check_admissible(word, type_)
    return word


def show_zword(type_: TypeTag, word: tuple) -> str:
    if not word:
        return "1"
    if type_ is TypeTag.G:
        return ",".join(f"{a.t}/{a.s}" for a in word)
    return ",".join("th" if a == THETA else str(a.s) for a in word)


def show_lincomb(items, show) -> list[str]:
    return [f"{format_rational(c):>6}  {show(k)}" for k, c in items]


def _series_text(coeffs) -> str:
    return " + ".join(f"{format_rational(c)}*q^{i}" for i, c in enumerate(coeffs) if c) or "0"


def _emit(cfg: CliConfig, text_lines, payload) -> None:
    out = json.dumps(payload, indent=1) if cfg.format == "json" else "\n".join(text_lines)
    if cfg.out:
        cfg.out.write_text(out + "\n")
    else:
        print(out)


def _need_type(cfg: CliConfig) -> TypeTag:
    if cfg.type is None:
        raise SystemExit("this command needs --type")
    return cfg.type


# --------------------------------------------------------------------------
# commands


def cmd_count(cfg: CliConfig, ns) -> int:
    t = _need_type(cfg)
    rows, ok = [], True
    lines = [f"type {t.value}: #W_<=w (enumerated / closed form)"]
    for w in range(1, cfg.weight + 1):
        n = len(enumerate_o(w)) if t is TypeTag.O else len(enumerate_admissible(t, w))
        c = closed_form_count(t, w)
        ok &= n == c
        rows.append({"weight": w, "enumerated": n, "closed_form": c})
        lines.append(f"w={w}: {n} / {c}" + ("" if n == c else "  MISMATCH"))
    _emit(cfg, lines, rows)
    return 0 if ok else 1


def cmd_words(cfg: CliConfig, ns) -> int:
    t = _need_type(cfg)
    words = enumerate_admissible(t, cfg.weight)
    if t is TypeTag.O:
        payload = [[a.s for a in w] for w in words]
    else:
        payload = [zword_to_composition(w, t).to_json() for w in words]
    lines = [show_zword(t, w) for w in words]
    _emit(cfg, lines, payload)
    return 0


def cmd_stuffle(cfg: CliConfig, ns) -> int:
    t = _need_type(cfg)
    u, v = parse_zword(t, ns.u), parse_zword(t, ns.v)
    prod = stuffle(t, u, v)
    items = sorted(prod.items(), key=lambda kv: (weight(kv[0]), len(kv[0]), kv[0]))
    lines = show_lincomb(items, lambda w: " ".join(map(repr, w)) or "1")
    ok = True
    if ns.check:
        lhs = eval_lincomb(prod, type_=t, order=cfg.order)
        rhs = eval_lincomb({u: 1}, type_=t, order=cfg.order) * eval_lincomb({v: 1}, type_=t, order=cfg.order)
        ok = lhs == rhs
        lines.append(f"series check to q^{cfg.order}: {'pass' if ok else 'FAIL'}")
    _emit(cfg, lines, [[show_zword(t, w), format_rational(c)] for w, c in items])
    return 0 if ok else 1


def cmd_shuffle(cfg: CliConfig, ns) -> int:
    u, v = parse_pyword(ns.u), parse_pyword(ns.v)
    prod = shuffle(u, v)
    items = sorted(prod.items())
    _emit(cfg, show_lincomb(items, pretty), [[w, format_rational(c)] for w, c in items])
    return 0


def cmd_eval(cfg: CliConfig, ns) -> int:
    t = _need_type(cfg)
    if t is TypeTag.O:
        series = eval_o([a.s for a in parse_zword(t, ns.word)], cfg.order)
    else:
        series = eval_value(zword_to_composition(parse_zword(t, ns.word), t), cfg.order)
    coeffs = [format_rational(c) for c in series.coeffs]
    _emit(cfg, [_series_text(series.coeffs) + f" + O(q^{cfg.order + 1})"], coeffs)
    return 0


def cmd_dual(cfg: CliConfig, ns) -> int:
    p = parse_pyword(ns.word)
    d = dual(p)
    lines = [f"{pretty(p)} -> {pretty(d)}"]
    ok = True
    if ns.check:
        a = eval_value(composition_of(p), cfg.order)
        b = eval_value(composition_of(d), cfg.order)
        ok = a == b
        lines.append(f"series check to q^{cfg.order}: {'pass' if ok else 'FAIL'}")
    _emit(cfg, lines, {"word": p, "dual": d, "ok": ok})
    return 0 if ok else 1


_LABELS = {
    "#W": "#(W)_<=w",
    "lower bound": "lower bound of dim Z_<=w",
    "DS": "dim DS_<=w",
    "DU \\ DS": "dim(DU_<=w \\ DS_<=w)",
    "PR \\ (DS u DU)": "dim(PR_<=w \\ (DS_<=w u DU_<=w))",
    "DU \\ (PR u DS)": "dim(DU_<=w \\ (PR_<=w u DS_<=w))",
    "deficiency": "deficiency",
}


def _cell(v) -> str:
    return ",".join(str(x) for x in v) if isinstance(v, tuple) else str(v)


def cmd_table(cfg: CliConfig, ns) -> int:
    t = _need_type(cfg)
    if t is TypeTag.O:
        raise SystemExit("use the okounkov command for type O")
    imported = [import_relations(p) for p in cfg.imports]
    first = ns.start or 1
    cols = []
    for w in range(first, cfg.weight + 1):
        t0 = time.perf_counter()
        cols.append(table_column(t, w, cfg.order, cfg.delta, cfg.jobs, imported))
        print(f"[w={w} done in {time.perf_counter() - t0:.1f}s]", file=sys.stderr)
    keys = list(cols[0].rows)
    width = max(len(_LABELS[k]) for k in keys)
    lines = [f"{'w':<{width}} | " + " | ".join(f"{c.weight:>6}" for c in cols)]
    for k in keys:
        lines.append(f"{_LABELS[k]:<{width}} | " + " | ".join(f"{_cell(c.rows[k]):>6}" for c in cols))
    payload = [{"weight": c.weight, **{k: list(v) if isinstance(v, tuple) else v for k, v in c.rows.items()}} for c in cols]
    _emit(cfg, lines, payload)
    return 0


def resolve_data(name: str) -> Path:
    p = Path(name)
    if p.exists() or name not in BUNDLED:
        return p
    return Path(str(resources.files("qmzv") / "data" / name))


def load_identities(path: Path) -> list:
    text = path.read_text()
    if not text.strip():
        return []
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, list) or not all(isinstance(x, list) for x in data):
        raise ParseError(f"{path}: expected a list of identities, each a list of terms")
    return data


def cmd_verify(cfg: CliConfig, ns) -> int:
    ok_all, lines, payload = True, [], []
    for name in ns.files:
        path = resolve_data(name)
        for i, terms in enumerate(load_identities(path), 1):
            r = residual(identity_lincomb(terms), cfg.order)
            ok_all &= r is None
            if r is None:
                lines.append(f"{path.name} #{i}: pass")
            else:
                lines.append(f"{path.name} #{i}: FAIL (coefficient of q^{r[0]} is {format_rational(r[1])})")
            payload.append({"file": path.name, "index": i, "ok": r is None,
                            "residual": None if r is None else [r[0], format_rational(r[1])]})
    _emit(cfg, lines, payload)
    return 0 if ok_all else 1


def cmd_okounkov(cfg: CliConfig, ns) -> int:
    ok, lines, payload = True, [], []
    for w in range(max(2, ns.start or 2), cfg.weight + 1):
        rep = verify_okounkov(w, cfg.order, certify_up_to=ns.certify_up_to)
        ok &= rep.ok
        cert = "n/a" if rep.certified_dim is None else str(rep.certified_dim)
        lines.append(
            f"w={w}: #W={rep.words} conjectured={rep.conjectured} series rank={rep.series_rank} "
            f"certified={cert} {'ok' if rep.ok else 'MISMATCH'}"
        )
        payload.append({"weight": w, "words": rep.words, "conjectured": rep.conjectured,
                        "series_rank": rep.series_rank, "certified": rep.certified_dim})
    _emit(cfg, lines, payload)
    return 0 if ok else 1


def cmd_export(cfg: CliConfig, ns) -> int:
    t = _need_type(cfg)
    if cfg.out is None:
        raise SystemExit("export-relations needs --out")
    sys_ = gen_all(t, cfg.weight, cfg.jobs)
    export_relations(sys_, cfg.out)
    print(f"wrote {len(sys_.rows)} rows of rank {sys_.rank()} over {len(sys_.basis)} words to {cfg.out}")
    return 0


def cmd_import(cfg: CliConfig, ns) -> int:
    sys_ = import_relations(ns.file)
    lines = [f"type {sys_.type.value}, weight {sys_.weight}: {len(sys_.basis)} words, "
             f"{len(sys_.rows)} rows, rank {sys_.rank()}"]
    ok = True
    if ns.check:
        bad = sys_.check_soundness(cfg.order)
        ok = not bad
        lines.append(f"soundness to q^{cfg.order}: " + ("pass" if ok else f"FAIL rows {bad}"))
    _emit(cfg, lines, {"type": sys_.type.value, "weight": sys_.weight, "rows": len(sys_.rows),
                       "rank": sys_.rank(), "sound": ok})
    return 0 if ok else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", "-N", type=int, default=DEFAULT_ORDER, help="series truncation order")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", help="write output to this file")

    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("--type", choices=TYPE_CHOICES)
    weighted = argparse.ArgumentParser(add_help=False)
    weighted.add_argument("--weight", "-w", type=int, default=4)

    p = argparse.ArgumentParser(prog="qmzv", description="Relations among q-analogs of multiple zeta values.")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("count", parents=[common, typed, weighted], help="count admissible words")
    c.set_defaults(fn=cmd_count)
    c = sub.add_parser("words", parents=[common, typed, weighted], help="list admissible words")
    c.set_defaults(fn=cmd_words)
    c = sub.add_parser("stuffle", parents=[common, typed], help="stuffle product of two words")
    c.add_argument("u")
    c.add_argument("v")
    c.add_argument("--check", action="store_true", help="compare with the product of the series")
    c.set_defaults(fn=cmd_stuffle)
    c = sub.add_parser("shuffle", parents=[common], help="shuffle product of two PY words")
    c.add_argument("u")
    c.add_argument("v")
    c.set_defaults(fn=cmd_shuffle)
    c = sub.add_parser("eval", parents=[common, typed], help="q-expansion of a value")
    c.add_argument("word")
    c.set_defaults(fn=cmd_eval)
    c = sub.add_parser("dual", parents=[common], help="dual of a pure PY word")
    c.add_argument("word")
    c.add_argument("--check", action="store_true")
    c.set_defaults(fn=cmd_dual)
    c = sub.add_parser("table", parents=[common, typed, weighted], help="dimension table of a family")
    c.add_argument("--delta", type=int, default=0, help="extra weights used for augmented deficiency")
    c.add_argument("--start", type=int, help="first weight column")
    c.add_argument("--import", dest="imports", action="append", help="relation file to add")
    c.set_defaults(fn=cmd_table)
    c = sub.add_parser("verify", parents=[common], help="check identity files")
    c.add_argument("files", nargs="+")
    c.set_defaults(fn=cmd_verify)
    c = sub.add_parser("okounkov", parents=[common, weighted], help="dimension check for type O values")
    c.add_argument("--start", type=int)
    c.add_argument("--certify-up-to", type=int, default=6)
    c.set_defaults(fn=cmd_okounkov)
    c = sub.add_parser("export-relations", parents=[common, typed, weighted], help="write a relation system")
    c.set_defaults(fn=cmd_export)
    c = sub.add_parser("import-relations", parents=[common], help="read a relation system")
    c.add_argument("file")
    c.add_argument("--check", action="store_true", help="verify every row numerically")
    c.set_defaults(fn=cmd_import)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = CliConfig.from_args(ns)
        return ns.fn(cfg, ns)
    except (QMZVError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
