"""Command-line front end: colorings, searches, audits, progression scans,
word dynamics, and witness checks with reproducible machine-readable output.

Every subcommand writes one JSON document (default), a CSV table, or a plain
text summary to stdout. Errors become JSON objects on stderr: exit 2 for
unparsable flags or spec strings, exit 1 for domain failures. Identical
command lines produce byte-identical output; the only randomness source is
the explicit --seed flag (default 0).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import IO, Callable, Sequence

import numpy as np

from .coloring import (
    Coloring,
    ExplicitColoring,
    PeriodicColoring,
    SeededRandomColoring,
    case2_coloring,
    geometric_3coloring,
    power_2coloring,
    read_runlength,
    recursive_log_coloring,
    triple_2coloring,
    write_runlength,
)
from .dynamics import (
    density_profile,
    dichotomy_detect,
    return_set,
    word_from_coloring,
)
from .errors import (
    NoConfiguration,
    ParseError,
    PolynomialError,
    SumsetRamseyError,
)
from .poly import IntPolynomial, parse_poly
from .search import (
    bad_set,
    bad_set_growth,
    exhaustive_search,
    greedy_search,
    longest_ap,
)
from .witness import WitnessParams, build_witness, check_sumset_identity

__all__ = ["parse_coloring_spec", "run", "main"]

_KINDS = (
    "power2",
    "geo3",
    "triple",
    "recursive",
    "case2",
    "periodic",
    "random",
    "explicit",
    "file",
)


# ---------------------------------------------------------------------------
# coloring spec grammar: kind[:params][@file], params = positional and
# key=value entries separated by commas, rationals written p/q
# ---------------------------------------------------------------------------


def _int_tok(tok: str, text: str, pos: int) -> int:
    try:
        return int(tok.strip())
    except ValueError:
        raise ParseError(f"expected integer, got {tok.strip()!r}", text, pos) from None


def _frac_tok(tok: str, text: str, pos: int) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected rational, got {tok.strip()!r}", text, pos) from None


def _poly_tok(tok: str, text: str, pos: int) -> IntPolynomial:
    try:
        return parse_poly(tok)
    except (PolynomialError, ValueError) as exc:
        raise ParseError(str(exc), text, pos) from None


def _pattern_tok(tok: str, text: str, pos: int) -> list[int]:
    t = tok.strip()
    if "-" in t:
        return [_int_tok(x, text, pos) for x in t.split("-")]
    if t.isdigit():
        return [int(ch) for ch in t]
    raise ParseError(f"expected digit string or dash-joined colors, got {t!r}", text, pos)


def _split_params(params: str, text: str, base: int):
    """Positional tokens and named tokens with their offsets in text."""
    pos_args: list[tuple[str, int]] = []
    named: dict[str, tuple[str, int]] = {}
    if params == "":
        return pos_args, named
    pos = base
    for tok in params.split(","):
        if "=" in tok:
            key, _, val = tok.partition("=")
            key = key.strip()
            if key in named:
                raise ParseError(f"duplicate parameter {key!r}", text, pos)
            named[key] = (val, pos + len(key) + 1)
        elif named:
            raise ParseError("positional parameter after named one", text, pos)
        else:
            pos_args.append((tok, pos))
        pos += len(tok) + 1
    return pos_args, named


def _take_named(named: dict, allowed: Sequence[str], text: str) -> None:
    for key, (_, pos) in named.items():
        if key not in allowed:
            raise ParseError(f"unknown parameter {key!r}", text, pos - len(key) - 1)


def _arity(kind: str, pos_args: list, want: int, text: str) -> None:
    if len(pos_args) != want:
        at = pos_args[want][1] if len(pos_args) > want else len(text)
        raise ParseError(
            f"{kind} takes {want} positional parameter(s), got {len(pos_args)}",
            text,
            at,
        )


def parse_coloring_spec(s: str, default_seed: int = 0) -> Coloring:
    """Resolve a coloring descriptor to a coloring instance."""
    text = s.strip()
    if not text:
        raise ParseError("empty coloring spec", s, 0)
    head, at, path = text.partition("@")
    kind, colon, params = head.partition(":")
    kind = kind.strip()
    if kind not in _KINDS:
        raise ParseError(f"unknown coloring kind {kind!r}", s, 0)
    if at and kind != "file":
        raise ParseError("only 'file' specs take @path", s, len(head))
    if kind == "file":
        if colon:
            raise ParseError("file spec takes no parameters", s, len(kind))
        if not at or not path:
            raise ParseError("file spec needs @path", s, len(head))
        with open(path, "r", encoding="ascii") as fh:
            return read_runlength(fh, descriptor=f"file@{path}")
    base = len(kind) + 1
    pos_args, named = _split_params(params, s, base)

    if kind == "power2":
        _arity(kind, pos_args, 2, s)
        _take_named(named, (), s)
        a, b = (_int_tok(t, s, p) for t, p in pos_args)
        return power_2coloring(a, b)
    if kind == "geo3":
        _arity(kind, pos_args, 2, s)
        _take_named(named, ("l", "x", "y"), s)
        a, b = (_int_tok(t, s, p) for t, p in pos_args)
        kw = {k: _frac_tok(v, s, p) for k, (v, p) in named.items()}
        return geometric_3coloring(a, b, **kw)
    if kind == "triple":
        _arity(kind, pos_args, 3, s)
        _take_named(named, ("x", "l"), s)
        a, b, c = (_int_tok(t, s, p) for t, p in pos_args)
        kw = {k: _frac_tok(v, s, p) for k, (v, p) in named.items()}
        return triple_2coloring(a, b, c, **kw)
    if kind == "recursive":
        _arity(kind, pos_args, 0, s)
        _take_named(named, ("P", "Q", "a0", "window"), s)
        for req in ("P", "Q"):
            if req not in named:
                raise ParseError(f"recursive spec needs {req}=<polynomial>", s, base)
        P = _poly_tok(named["P"][0], s, named["P"][1])
        Q = _poly_tok(named["Q"][0], s, named["Q"][1])
        kw = {}
        if "a0" in named:
            kw["a0"] = _int_tok(named["a0"][0], s, named["a0"][1])
        if "window" in named:
            kw["window_n"] = _int_tok(named["window"][0], s, named["window"][1])
        return recursive_log_coloring(P, Q, **kw)
    if kind == "case2":
        _arity(kind, pos_args, 0, s)
        _take_named(named, ("P", "Q"), s)
        for req in ("P", "Q"):
            if req not in named:
                raise ParseError(f"case2 spec needs {req}=<polynomial>", s, base)
        P = _poly_tok(named["P"][0], s, named["P"][1])
        Q = _poly_tok(named["Q"][0], s, named["Q"][1])
        return case2_coloring(P, Q)
    if kind == "periodic":
        _arity(kind, pos_args, 1, s)
        _take_named(named, (), s)
        return PeriodicColoring(_pattern_tok(pos_args[0][0], s, pos_args[0][1]))
    if kind == "random":
        _arity(kind, pos_args, 0, s)
        _take_named(named, ("seed", "k"), s)
        seed = (
            _int_tok(named["seed"][0], s, named["seed"][1])
            if "seed" in named
            else default_seed
        )
        k = _int_tok(named["k"][0], s, named["k"][1]) if "k" in named else 2
        return SeededRandomColoring(seed=seed, palette=k)
    # explicit
    _arity(kind, pos_args, 1, s)
    _take_named(named, (), s)
    return ExplicitColoring(_pattern_tok(pos_args[0][0], s, pos_args[0][1]))


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------


def _fix(obj):
    """Normalize a document for stable JSON: floats to 12 significant digits."""
    if isinstance(obj, dict):
        return {k: _fix(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_fix(v) for v in obj]
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    return obj


def _print_json(doc, out: IO[str]) -> None:
    out.write(json.dumps(_fix(doc)) + "\n")


def _print_csv(rows, out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    for row in rows:
        writer.writerow(row)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _kv_lines(pairs, out: IO[str]) -> None:
    for key, value in pairs:
        out.write(f"{key} {_cell(value)}\n")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _ints_arg(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise ParseError(f"expected comma-separated integers for {flag}", text, 0) from None
    if not values:
        raise ParseError(f"expected at least one integer for {flag}", text, 0)
    return values


def _pairs_arg(text: str, flag: str) -> tuple[tuple[int, int], ...]:
    out = []
    for item in text.split(","):
        d, sep, k = item.partition(":")
        if not sep:
            raise ParseError(f"expected d:k pairs for {flag}", text, 0)
        try:
            out.append((int(d), int(k)))
        except ValueError:
            raise ParseError(f"bad pair {item!r} for {flag}", text, 0) from None
    return tuple(out)


def _parse_polys(text: str) -> list[IntPolynomial]:
    toks = [t.strip() for t in text.split(",")]
    if not toks or any(t == "" for t in toks):
        raise ParseError("expected comma-separated polynomials", text, 0)
    return [parse_poly(t) for t in toks]


def _set_arg(args) -> set[int]:
    if getattr(args, "set", None):
        return set(_ints_arg(args.set, "--set"))
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="ascii") as fh:
            return {int(t) for t in fh.read().split()}
    raise ParseError("need --set or --file", "", None)


def _coloring_from_args(args) -> Coloring:
    if args.coloring:
        return parse_coloring_spec(args.coloring, args.seed)
    kind = args.kind

    def need(*flags):
        missing = [f for f in flags if getattr(args, f.lstrip("-"), None) is None]
        if missing:
            raise ParseError(f"{kind} needs {', '.join('--' + m for m in missing)}", "", None)

    if kind == "power2":
        need("a", "b")
        return power_2coloring(args.a, args.b)
    if kind == "geo3":
        need("a", "b")
        kw = {k: Fraction(getattr(args, k)) for k in ("l", "x", "y") if getattr(args, k)}
        return geometric_3coloring(args.a, args.b, **kw)
    if kind == "triple":
        need("a", "b", "c")
        kw = {k: Fraction(getattr(args, k)) for k in ("x", "l") if getattr(args, k)}
        return triple_2coloring(args.a, args.b, args.c, **kw)
    if kind == "recursive":
        need("P", "Q")
        kw = {}
        if args.a0 is not None:
            kw["a0"] = args.a0
        if args.window is not None:
            kw["window_n"] = args.window
        return recursive_log_coloring(parse_poly(args.P), parse_poly(args.Q), **kw)
    if kind == "case2":
        need("P", "Q")
        return case2_coloring(parse_poly(args.P), parse_poly(args.Q))
    if kind == "periodic":
        need("pattern")
        return PeriodicColoring(_pattern_tok(args.pattern, args.pattern, 0))
    if kind == "random":
        return SeededRandomColoring(seed=args.seed, palette=args.k or 2)
    if kind == "explicit":
        need("pattern")
        return ExplicitColoring(_pattern_tok(args.pattern, args.pattern, 0))
    # file
    need("path")
    with open(args.path, "r", encoding="ascii") as fh:
        return read_runlength(fh, descriptor=f"file@{args.path}")


def _cmd_color(args, out: IO[str], err: IO[str]) -> int:
    c = _coloring_from_args(args)
    n = args.N
    if args.out == "runlength":
        write_runlength(c, n, out)
        return 0
    w = c.window(n)
    counts = [int(v) for v in w.counts()]
    colors = w.colors[1:]
    edges = np.nonzero(np.diff(colors))[0] + 1
    starts = np.concatenate(([0], edges))
    ends = np.concatenate((edges, [n]))
    runs = [[int(colors[s]), int(e - s)] for s, e in zip(starts, ends)]
    if args.out == "csv":
        _print_csv([("color", "length")] + [tuple(r) for r in runs], out)
        return 0
    if args.out == "text":
        _kv_lines(
            [
                ("descriptor", c.descriptor),
                ("N", n),
                ("palette", c.palette),
                ("counts", " ".join(f"{i + 1}={v}" for i, v in enumerate(counts))),
                ("runs", len(runs)),
            ],
            out,
        )
        return 0
    _print_json(
        {
            "descriptor": c.descriptor,
            "N": n,
            "palette": c.palette,
            "counts": counts,
            "runs": runs,
        },
        out,
    )
    return 0


def _cmd_search(args, out: IO[str], err: IO[str]) -> int:
    c = parse_coloring_spec(args.coloring, args.seed)
    polys = _parse_polys(args.polys)
    w = c.window(args.N)
    if args.strategy == "exhaustive":
        if args.sizeC is None:
            raise ParseError("exhaustive strategy needs --sizeC", "", None)
        cfg = exhaustive_search(w, polys, r=args.r, sizeC=args.sizeC)
        if cfg is None:
            raise NoConfiguration(
                f"no configuration with |C| = {args.sizeC} at r = {args.r}"
            )
    else:
        cfg = greedy_search(
            w, polys, r=args.r, maxC=args.maxC, candidate_cap=args.candidate_cap
        )
    doc = cfg.to_json(args.N)
    if args.out == "csv":
        rows = [("field", "value")] + [
            (k, " ".join(map(str, v)) if isinstance(v, list) else _cell(v))
            for k, v in doc.items()
        ]
        _print_csv(rows, out)
    elif args.out == "text":
        _kv_lines(
            [
                (k, " ".join(map(str, v)) if isinstance(v, list) else v)
                for k, v in doc.items()
            ],
            out,
        )
    else:
        _print_json(doc, out)
    return 0


def _cmd_audit(args, out: IO[str], err: IO[str]) -> int:
    c = parse_coloring_spec(args.coloring, args.seed)
    polys = _parse_polys(args.polys)
    if args.growth:
        if args.n is None or args.color is None:
            raise ParseError("--growth needs --n and --color", "", None)
        rows = bad_set_growth(c, args.n, polys, args.color, _ints_arg(args.growth, "--growth"))
        if args.out == "csv":
            _print_csv(
                [("M", "count", "max_element")]
                + [(m, ct, _cell(me)) for m, ct, me in rows],
                out,
            )
        elif args.out == "text":
            for m, ct, me in rows:
                out.write(f"M={m} count={ct} max_element={_cell(me) or '-'}\n")
        else:
            _print_json(
                [
                    {"M": m, "count": ct, "max_element": me}
                    if me is not None
                    else {"M": m, "count": ct}
                    for m, ct, me in rows
                ],
                out,
            )
        return 0
    if args.n_max is None:
        raise ParseError("audit needs --n-max (or --growth with --n and --color)", "", None)
    if args.M is None:
        raise ParseError("audit needs --M", "", None)
    color_list = [args.color] if args.color is not None else list(range(1, c.palette + 1))
    tasks = [(n, i) for n in range(1, args.n_max + 1) for i in color_list]

    def job(task):
        n, i = task
        return bad_set(c, n, polys, i, args.M)[1]

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(job, tasks))
    else:
        reports = [job(t) for t in tasks]
    docs = [r.to_json() for r in reports]
    if args.out == "csv":
        _print_csv(
            [("n", "color", "count", "max_element", "M", "stabilized")]
            + [
                (
                    d["n"],
                    d["color"],
                    d["count"],
                    _cell(d["max_element"]),
                    d["M"],
                    _cell(d["stabilized"]),
                )
                for d in docs
            ],
            out,
        )
    elif args.out == "text":
        for d in docs:
            out.write(
                f"n={d['n']} color={d['color']} count={d['count']} "
                f"max_element={_cell(d['max_element']) or '-'} M={d['M']} "
                f"stabilized={_cell(d['stabilized'])}\n"
            )
    else:
        _print_json(docs, out)
    return 0


def _cmd_ap(args, out: IO[str], err: IO[str]) -> int:
    start, diff, length = longest_ap(_set_arg(args))
    doc = {"start": start, "difference": diff, "length": length}
    if args.out == "csv":
        _print_csv([("start", "difference", "length"), (start, diff, length)], out)
    elif args.out == "text":
        out.write(f"start={start} difference={diff} length={length}\n")
    else:
        _print_json(doc, out)
    return 0


def _cmd_dynamics(args, out: IO[str], err: IO[str]) -> int:
    if args.op == "return":
        if args.coloring is None or args.N is None:
            raise ParseError("return op needs --coloring and --N", "", None)
        word = word_from_coloring(parse_coloring_spec(args.coloring, args.seed), args.N)
        M = args.M if args.M is not None else (word.n - args.h) // args.b
        rs = return_set(word, args.a, args.b, args.h, M)
        doc = rs.to_json()
        if args.window_sizes:
            doc["density"] = [
                [wsz, val]
                for wsz, val in density_profile(
                    rs.elements, M, _ints_arg(args.window_sizes, "--window-sizes")
                )
            ]
        if args.out == "csv":
            _print_csv([("n",)] + [(n,) for n in rs.elements], out)
        elif args.out == "text":
            _kv_lines(
                [
                    ("a", rs.a),
                    ("b", rs.b),
                    ("h", rs.h),
                    ("M", rs.M),
                    ("count", len(rs.elements)),
                    ("max_gap", doc["max_gap"]),
                ],
                out,
            )
        else:
            _print_json(doc, out)
        return 0
    if args.op == "dichotomy":
        if args.y is None or args.z is None or args.N is None:
            raise ParseError("dichotomy op needs --y, --z and --N", "", None)
        if args.D is None or args.K is None:
            raise ParseError("dichotomy op needs --D and --K", "", None)
        yw = word_from_coloring(parse_coloring_spec(args.y, args.seed), args.N)
        zw = word_from_coloring(parse_coloring_spec(args.z, args.seed), args.N)
        d = dichotomy_detect(yw, zw, args.a, args.b, args.D, args.K)
        doc = {"found": d is not None, "d": d}
        if args.out == "csv":
            _print_csv([("found", "d"), (_cell(d is not None), _cell(d))], out)
        elif args.out == "text":
            out.write(f"found={_cell(d is not None)} d={_cell(d) or '-'}\n")
        else:
            _print_json(doc, out)
        return 0
    # density
    if args.M is None or not args.window_sizes:
        raise ParseError("density op needs --M and --window-sizes", "", None)
    prof = density_profile(
        _set_arg(args), args.M, _ints_arg(args.window_sizes, "--window-sizes")
    )
    if args.out == "csv":
        _print_csv([("window", "density")] + [(w_, _cell(v)) for w_, v in prof], out)
    elif args.out == "text":
        for w_, v in prof:
            out.write(f"window={w_} density={_cell(v)}\n")
    else:
        _print_json([{"window": w_, "density": v} for w_, v in prof], out)
    return 0


def _cmd_witness(args, out: IO[str], err: IO[str]) -> int:
    fields = {}
    for name in ("s", "t", "E", "j", "beta", "L0", "xi", "alpha"):
        value = getattr(args, name)
        if value is not None:
            fields[name] = value
    if args.d:
        fields["d_values"] = _ints_arg(args.d, "--d")
    if args.v:
        fields["v_values"] = _ints_arg(args.v, "--v")
    if args.offsets:
        fields["offsets"] = _ints_arg(args.offsets, "--offsets")
    if args.pairs:
        fields["pairs"] = _pairs_arg(args.pairs, "--pairs")
    p = WitnessParams(
        variant=args.variant, a=args.a, b=args.b, r=args.r, d_tilde=args.dtilde, **fields
    )
    B, C = build_witness(p)
    verdict = check_sumset_identity(p, B, C) if args.check else None
    e_chain = None
    if p.variant == "CaseI":
        e_chain = "verified" if p.e_chain_checked else "unchecked"
    doc = {
        "variant": p.variant,
        "a": p.a,
        "b": p.b,
        "r": p.r,
        "d_tilde": p.d_tilde,
        "B": list(B),
        "C": list(C),
    }
    if e_chain is not None:
        doc["e_chain"] = e_chain
    if verdict is not None:
        doc["check"] = verdict
    if args.out == "csv":
        rows = [("field", "value")] + [
            (k, " ".join(map(str, v)) if isinstance(v, list) else _cell(v))
            for k, v in doc.items()
        ]
        _print_csv(rows, out)
    elif args.out == "text":
        _kv_lines(
            [
                (k, " ".join(map(str, v)) if isinstance(v, list) else v)
                for k, v in doc.items()
            ],
            out,
        )
    else:
        _print_json(doc, out)
    if args.check and not verdict:
        _print_json(
            {"error": "IdentityMismatch", "message": "sumset identity check failed"},
            err,
        )
        return 1
    return 0


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _add_out(p: argparse.ArgumentParser, extra: Sequence[str] = ()) -> None:
    p.add_argument(
        "--out",
        choices=["json", "csv", "text", *extra],
        default="json",
        help="output format (default json)",
    )


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for random colorings without an explicit seed= (default 0)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumset-ramsey",
        description="Monochromatic sumset colorings, searches, and audits.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("color", help="evaluate a coloring over [1, N]")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--coloring", help="coloring spec, e.g. power2:1,2")
    src.add_argument("--kind", choices=_KINDS, help="built-in kind, with flags below")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--l")
    p.add_argument("--P")
    p.add_argument("--Q")
    p.add_argument("--a0", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--pattern")
    p.add_argument("--k", type=int)
    p.add_argument("--path")
    p.add_argument("--N", type=_positive_int, required=True)
    _add_seed(p)
    _add_out(p, extra=("runlength",))
    p.set_defaults(handler=_cmd_color)

    p = sub.add_parser("search", help="hunt a monochromatic configuration")
    p.add_argument("--coloring", required=True)
    p.add_argument("--polys", required=True, help='e.g. "n,2n"')
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--r", type=_positive_int, required=True)
    p.add_argument("--maxC", type=_positive_int, default=8)
    p.add_argument("--strategy", choices=["greedy", "exhaustive"], default="greedy")
    p.add_argument("--sizeC", type=_positive_int)
    p.add_argument("--candidate-cap", dest="candidate_cap", type=_positive_int)
    p.add_argument(
        "--threads",
        type=_positive_int,
        default=1,
        help="worker hint; results never depend on it",
    )
    _add_seed(p)
    _add_out(p)
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("audit", help="bad-set stabilization reports")
    p.add_argument("--coloring", required=True)
    p.add_argument("--polys", required=True)
    p.add_argument("--n-max", dest="n_max", type=_positive_int)
    p.add_argument("--n", type=_positive_int, help="single n (growth mode)")
    p.add_argument("--color", type=_positive_int)
    p.add_argument("--M", type=_positive_int)
    p.add_argument("--growth", help="comma-separated horizons for a growth curve")
    p.add_argument(
        "--threads",
        type=_positive_int,
        default=1,
        help="parallel report workers; output order is fixed",
    )
    _add_seed(p)
    _add_out(p)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("ap", help="longest arithmetic progression in a set")
    p.add_argument("--set", help="comma-separated integers")
    p.add_argument("--file", help="file of whitespace-separated integers")
    _add_out(p)
    p.set_defaults(handler=_cmd_ap)

    p = sub.add_parser("dynamics", help="return sets, dichotomy scans, densities")
    p.add_argument("--op", choices=["return", "dichotomy", "density"], required=True)
    p.add_argument("--coloring")
    p.add_argument("--y", help="first word's coloring spec (dichotomy)")
    p.add_argument("--z", help="second word's coloring spec (dichotomy)")
    p.add_argument("--N", type=_positive_int)
    p.add_argument("--a", type=_positive_int, default=1)
    p.add_argument("--b", type=_positive_int, default=2)
    p.add_argument("--h", type=int, default=0)
    p.add_argument("--M", type=_positive_int)
    p.add_argument("--D", type=_positive_int)
    p.add_argument("--K", type=int)
    p.add_argument("--set")
    p.add_argument("--file")
    p.add_argument("--window-sizes", dest="window_sizes")
    _add_seed(p)
    _add_out(p)
    p.set_defaults(handler=_cmd_dynamics)

    p = sub.add_parser("witness", help="build and check a witness pair")
    p.add_argument("--variant", required=True)
    p.add_argument("--a", type=_positive_int, required=True)
    p.add_argument("--b", type=_positive_int, required=True)
    p.add_argument("--r", type=_positive_int, required=True)
    p.add_argument("--dtilde", type=int, default=0)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--d", help="comma-separated d values")
    p.add_argument("--E", type=int)
    p.add_argument("--pairs", help="comma-separated d:k pairs")
    p.add_argument("--v", help="comma-separated v values")
    p.add_argument("--j", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--L0", type=int)
    p.add_argument("--offsets", help="comma-separated offsets")
    p.add_argument("--xi", type=int)
    p.add_argument("--alpha", type=int)
    p.add_argument("--check", action="store_true", help="verify the sumset identity")
    _add_out(p)
    p.set_defaults(handler=_cmd_witness)

    return parser


def run(
    argv: Sequence[str] | None = None,
    out: IO[str] | None = None,
    err: IO[str] | None = None,
) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler: Callable = args.handler
    try:
        return handler(args, out, err)
    except ParseError as exc:
        _print_json(
            {
                "error": "ParseError",
                "message": str(exc),
                "text": exc.text,
                "pos": exc.pos,
            },
            err,
        )
        return 2
    except SumsetRamseyError as exc:
        _print_json({"error": type(exc).__name__, "message": str(exc)}, err)
        return 1
    except OSError as exc:
        _print_json({"error": "IOError", "message": str(exc)}, err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
