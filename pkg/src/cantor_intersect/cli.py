"""Command-line interface.

Subcommands: classify, trace, bounds, verify, render, dense, cover.
Exit codes: 0 success, 1 verification mismatch, 2 validation error,
3 formula-mode refusal (simultaneous case / non-sparse digit set),
4 horizon-limited or unknown result, 5 capacity exceeded.

Translation grammar (--t): "p/q", an integer, or an expansion
"0.d1d2(p1p2)" with one character per digit for n <= 10, bracketed
comma lists for larger bases ("0.[10,0]([7])"), optional "@n" suffix.
JSON output carries `"schema": "cantor-intersect/1"` and, for every
exact quantity, both the symbolic fields and a decimal rendering.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .counting import mu_profile, nu
from .digits import (
    DigitSet,
    NaryExpansion,
    as_expansion,
    make_digit_set,
    parse_translation,
)
from .errors import (
    EngineError,
    LevelTooLarge,
    NonSparse,
    NotInF,
    SimultaneousStateEncountered,
    UnknownAtHorizon,
    ValidationError,
)
from .exactvals import ExactLogValue, GrowthExponent
from .measure import (
    MeasureReport,
    cover_upper_bound,
    dense_approximant,
    measure_report,
    nonsparse_report,
)
from .oracle import (
    DEFAULT_CAP,
    counts_of,
    classify_intervals,
    finite_decomposition,
    intersect_exact,
    oracle_count_series,
)
from .render import render_svg
from .transition import sigma_sequence

SCHEMA = "cantor-intersect/1"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_VALIDATION = 2
EXIT_REFUSED = 3
EXIT_UNKNOWN = 4
EXIT_CAPACITY = 5


def _default_cap() -> int:
    env = os.environ.get("CANTOR_CAP")
    return int(env) if env else DEFAULT_CAP


def _add_common(p: argparse.ArgumentParser, need_t: bool = False) -> None:
    p.add_argument("--n", type=int, required=True, help="base")
    p.add_argument("--digits", required=True, help="comma-separated digit list, e.g. 0,2")
    if need_t:
        p.add_argument("--t", required=True, help='translation: "p/q" or "0.d(d)"')
    p.add_argument("--K", type=int, default=64, help="horizon (default 64)")
    p.add_argument("--cap", type=int, default=None, help="interval cap (default 10^6)")
    p.add_argument("--precision", type=int, default=50, help="decimal digits")
    p.add_argument("--format", choices=["json", "csv", "text", "svg"], default=None)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cantor-intersect",
        description="exact engine for Cantor set self-intersection dimensions and measure bounds",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="digit set classification")
    _add_common(p)

    p = sub.add_parser("trace", help="case automaton trace with survivor counts")
    _add_common(p, need_t=True)

    p = sub.add_parser("bounds", help="dimension and measure bounds report")
    _add_common(p, need_t=True)

    p = sub.add_parser("verify", help="oracle vs formula cross-check")
    _add_common(p, need_t=True)

    p = sub.add_parser("render", help="SVG of levels, translates, intersections")
    _add_common(p, need_t=True)

    p = sub.add_parser("dense", help="greedy approximant with target measure band")
    _add_common(p, need_t=True)
    p.add_argument("--beta", required=True, help="target exponent in (0,1), e.g. 1/2")
    p.add_argument("--y", required=True, help="target constant, e.g. 1")
    p.add_argument("--eps", required=True, help="distance bound, e.g. 1/27")

    p = sub.add_parser("cover", help="optimal consecutive-block cover cost")
    _add_common(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--s", default=None, help='exponent: "p/q" (default log_n m)')
    return ap


def _fraction(text: str) -> Fraction:
    if "/" in text:
        a, _, b = text.partition("/")
        return Fraction(int(a), int(b))
    return Fraction(text)


def _json_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _json_exponent(e: GrowthExponent | None, precision: int) -> dict | None:
    if e is None:
        return None
    beta_frac = e.beta_fraction()
    s_frac = e.s_fraction()
    return {
        "n": e.n,
        "m": e.m,
        "cycle_product": e.P,
        "cycle_length": e.p,
        "beta": _json_fraction(beta_frac) if beta_frac is not None else None,
        "beta_decimal": e.beta_decimal(precision),
        "s": _json_fraction(s_frac) if s_frac is not None else None,
        "s_decimal": e.s_decimal(precision),
    }


def _json_value(v: ExactLogValue | None, precision: int) -> dict | None:
    if v is None:
        return None
    out = {
        "zero": v.is_zero,
        "infinite": v.is_infinite,
        "coeff": _json_fraction(v.coeff),
        "base": _json_fraction(v.base),
        "decimal": v.decimal(precision),
    }
    rad = v.radical()
    if rad is not None:
        out["radical"] = {"radicand": _json_fraction(rad[0]), "degree": rad[1]}
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _digit_set(args) -> DigitSet:
    digits = [int(x) for x in args.digits.split(",") if x != ""]
    return make_digit_set(args.n, digits)


def _cap(args) -> int:
    return args.cap if args.cap is not None else _default_cap()


# -- subcommands ---------------------------------------------------------------


def cmd_classify(args) -> int:
    ds = _digit_set(args)
    d = ds.delta
    doc = {
        "schema": SCHEMA,
        "command": "classify",
        "n": ds.base,
        "digits": list(ds.digits),
        "m": ds.m,
        "delta": list(d.values),
        "uniform": d.uniform,
        "regular": d.regular,
        "sparse": d.sparse,
    }
    if (args.format or "json") == "text":
        lines = [
            f"{ds}: m={ds.m}",
            f"delta = {list(d.values)}",
            f"uniform={d.uniform} regular={d.regular} sparse={d.sparse}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _trace_rows(ds, t, K, precision):
    profile = mu_profile(t, K, ds)
    rows = []
    for k in range(K + 1):
        nuk = nu(profile, k)
        ell_k = profile.ells[k]
        rows.append(
            {
                "k": k,
                "digit": profile.digits[k - 1] if k else "",
                "sigma": profile.states[k].symbol,
                "factor": profile.factors[k] if k else "",
                "mu": profile.mus[k],
                "nu_decimal": (
                    "-inf" if nuk.is_neg_infinity
                    else str(nuk.numeric(min(precision, 15)))
                ),
                "ell": _json_fraction(ell_k) if ell_k is not None else "",
            }
        )
    return rows


def cmd_trace(args) -> int:
    ds = _digit_set(args)
    t = parse_translation(args.t, args.n)
    rows = _trace_rows(ds, t, args.K, args.precision)
    fmt = args.format or "json"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(buf.getvalue(), args.out)
    elif fmt == "text":
        lines = [
            f"k={r['k']:>3} digit={r['digit']!s:>2} sigma={r['sigma']:>2} "
            f"factor={r['factor']!s:>2} mu={r['mu']}"
            for r in rows
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        doc = {
            "schema": SCHEMA,
            "command": "trace",
            "n": args.n,
            "digits": [int(x) for x in args.digits.split(",")],
            "t": args.t,
            "K": args.K,
            "rows": rows,
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _report_doc(rep: MeasureReport, precision: int) -> dict:
    doc = {
        "schema": SCHEMA,
        "command": "bounds",
        "kind": rep.kind,
        "n": rep.digit_set.base,
        "digits": list(rep.digit_set.digits),
        "t": rep.translation_text,
        "exponent": _json_exponent(rep.exponent, precision),
        "L": _json_value(rep.L, precision),
        "L_tilde": _json_value(rep.L_tilde, precision),
        "lower_bound": _json_value(rep.lower, precision),
        "upper_bound": _json_value(rep.upper, precision),
        "measure_exact": _json_value(rep.measure_exact, precision),
        "copy_count": rep.copy_count,
        "depth": rep.depth,
        "touching_points": (
            [_json_fraction(p) for p in rep.touching_points]
            if rep.touching_points is not None
            else None
        ),
        "oracle_counts": (
            [
                {
                    "k": k,
                    "interval": c.interval,
                    "potential": c.potential,
                    "potentially_empty": c.potentially_empty,
                    "empty": c.empty,
                }
                for k, c in enumerate(rep.oracle_counts)
            ]
            if rep.oracle_counts is not None
            else None
        ),
        "flags": rep.flags,
        "provenance": rep.provenance,
        "notes": list(rep.notes),
        "precision": precision,
    }
    return doc


def cmd_bounds(args) -> int:
    ds = _digit_set(args)
    t = parse_translation(args.t, args.n)
    try:
        rep = measure_report(t, ds, K=args.K, cap=_cap(args))
    except NonSparse:
        rep = nonsparse_report(t, ds, K=min(args.K, 12), cap=_cap(args))
        doc = _report_doc(rep, args.precision)
        doc["refusal"] = "non-sparse digit set: formula-mode bounds suppressed"
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
        return EXIT_REFUSED
    _emit(json.dumps(_report_doc(rep, args.precision), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    ds = _digit_set(args)
    t = parse_translation(args.t, args.n)
    cap = _cap(args)
    e = as_expansion(t, args.n)
    lines = []
    if not ds.delta.sparse:
        k_max = 0
        while ds.m ** (k_max + 1) <= min(cap, 10**5) and k_max < args.K:
            k_max += 1
        series = oracle_count_series(ds, e, k_max, cap)
        lines.append("non-sparse digit set: formula mode suppressed, oracle counts:")
        for k, c in enumerate(series):
            lines.append(
                f"  k={k}: interval={c.interval} potential={c.potential} "
                f"potentially_empty={c.potentially_empty} empty={c.empty}"
            )
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_REFUSED
    canon = e.canonical()
    if canon.is_finite:
        dec = finite_decomposition(ds, canon, cap)
        cls = classify_intervals(ds, canon, dec.level, cap)
        ok = set(dec.a_offsets) == set(cls.interval_offsets)
        lines.append(
            f"finite t at depth {dec.level}: copies={len(dec.a_offsets)} "
            f"touching={len(dec.b_points)} [{'OK' if ok else 'MISMATCH'}]"
        )
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK if ok else EXIT_MISMATCH
    k_max = 0
    while ds.m ** (k_max + 1) <= min(cap, 10**5) and k_max < args.K:
        k_max += 1
    series = oracle_count_series(ds, canon, k_max, cap)
    profile = mu_profile(canon, k_max, ds)
    for k, c in enumerate(series):
        if c.interval + c.potential != profile.mus[k]:
            lines.append(
                f"MISMATCH at k={k}: oracle {c.interval}+{c.potential} "
                f"!= mu {profile.mus[k]}"
            )
            _emit("\n".join(lines) + "\n", args.out)
            return EXIT_MISMATCH
        comp = intersect_exact(ds, canon.value, k, cap)
        ell_k = profile.ells[k]
        if ell_k is not None and any(hi - lo != ell_k for lo, hi in comp):
            lines.append(f"MISMATCH at k={k}: component length differs from ell")
            _emit("\n".join(lines) + "\n", args.out)
            return EXIT_MISMATCH
    lines.append(f"PASS: oracle counts equal mu through k={k_max}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    ds = _digit_set(args)
    t = parse_translation(args.t, args.n)
    _emit(render_svg(ds, t, args.K, _cap(args)), args.out)
    return EXIT_OK


def cmd_dense(args) -> int:
    ds = _digit_set(args)
    t = parse_translation(args.t, args.n)
    approx = dense_approximant(
        ds, t, _fraction(args.beta), _fraction(args.y), _fraction(args.eps), K=args.K
    )
    doc = {
        "schema": SCHEMA,
        "command": "dense",
        "n": args.n,
        "digits": [int(x) for x in args.digits.split(",")],
        "t": args.t,
        "beta": args.beta,
        "y": args.y,
        "eps": args.eps,
        "K": args.K,
        "copied_digits": approx.copied,
        "reset_digit": approx.reset_digit,
        "prefix": list(approx.prefix),
        "first_greedy_digits": [
            approx.stream.digit_at(k)
            for k in range(len(approx.prefix) + 1, min(len(approx.prefix) + 33, approx.horizon))
        ],
        "distance_bound": _json_fraction(approx.distance_bound),
        "band_entry": approx.band_entry,
        "band_ok": approx.band_ok,
        "liminf_estimate_at": approx.liminf_estimate_at,
        "liminf_in_target_band": approx.liminf_in_target_band,
        "states_all_pm1": approx.states_all_pm1,
        "horizon_limited": approx.horizon_limited,
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_UNKNOWN if approx.horizon_limited else EXIT_OK


def cmd_cover(args) -> int:
    ds = _digit_set(args)
    s = _fraction(args.s) if args.s else None
    bound = cover_upper_bound(ds, args.depth, s, precision=args.precision, cap=_cap(args))
    doc = {
        "schema": SCHEMA,
        "command": "cover",
        "n": args.n,
        "digits": [int(x) for x in args.digits.split(",")],
        "depth": bound.depth,
        "s": bound.exponent_text,
        "cost_decimal": bound.cost_decimal(args.precision),
        "blocks": [list(b) for b in bound.blocks],
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


_COMMANDS = {
    "classify": cmd_classify,
    "trace": cmd_trace,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "render": cmd_render,
    "dense": cmd_dense,
    "cover": cmd_cover,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SimultaneousStateEncountered as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (NonSparse, NotInF) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except LevelTooLarge as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except UnknownAtHorizon as exc:
        print(f"unknown at horizon: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
