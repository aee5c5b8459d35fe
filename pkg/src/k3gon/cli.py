"""Command-line front end: ``k3gon {check|scan|bn-divisors|qform|alpha|h1}``.

Exit codes: 0 success, 2 invalid arguments or configuration, 3 when a value the
theory guarantees is contradicted by the computation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import EnumerationError, InternalInvariantViolation, K3GonError
from .invariants import Params, brill_noether_number, is_perfect_square
from .k3lattice import C, H, K3Lattice, c_is_ample, is_effective, self_int
from .qform import DEFAULT_BOUND, BinaryQuadForm, represents
from .scan import ScanConfig, build_row, format_minimizers, render, render_table, run_scan, write_output
from .verifier import (
    bn_divisor_solutions,
    check_very_ample_order,
    compute_alpha,
    f_value,
    h1_normal_vanishes,
    mori_exists,
    rathmann_exists,
    theorem3_applicable,
)

EXIT_USAGE = 2
EXIT_INVARIANT = 3


def parse_range(text: str) -> tuple[int, int]:
    """``"14..20"`` -> (14, 20); a bare integer is a one-point range."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use A..B or A") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"range {text!r} is descending")
    return a, b


def _dump(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2, default=str) + "\n"
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{k}:")
            lines.extend(f"  {kk}: {_plain(vv)}" for kk, vv in v.items())
        else:
            lines.append(f"{k}: {_plain(v)}")
    return "\n".join(lines) + "\n"


def _plain(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def cmd_check(args) -> int:
    p = Params(args.d, args.g, args.r)
    row = build_row(p, args.bound, args.strict_a)
    hyp = theorem3_applicable(p, args.bound)
    report = {
        "params": {"d": p.d, "g": p.g, "r": p.r},
        "rho": row.rho,
        "expected_gonality": row.expected_gonality,
        "theorem3": {**hyp.flags, **hyp.quantities},
        # alpha is only reported as such when the theorem guarantees it
        "alpha": row.alpha if hyp.ok else None,
        "minimizers": format_minimizers(row.minimizers) if hyp.ok else None,
        "alpha_unguaranteed": None if hyp.ok else row.alpha,
    }
    if p.r == 3:
        report["h1_vanishes"] = row.h1_vanishes
        report["thm1_ok"] = row.thm1_applicable
        report["derived_pairs"] = ";".join(f"({a},{b})->{c}" for a, b, c in row.derived_pairs)
        report["mori"] = mori_exists(p.d, p.g).value
    if p.r >= 3 and p.g > 0:
        report["rathmann"] = rathmann_exists(p)
    L = K3Lattice(p, bound=args.bound)
    report["lattice_certified"] = L.certified
    report["c_ample"] = c_is_ample(L).value
    k = p.d - 2 * p.r - 1
    if L.certified and k >= 0:
        try:
            report["very_ample_k"] = k
            report["very_ample"] = str(check_very_ample_order(p, k, L))
        except EnumerationError as exc:
            report["very_ample"] = f"n/a ({exc})"
    else:
        report["very_ample"] = "n/a"
    write_output(_dump(report, args.format), args.out)
    return 0


def cmd_scan(args) -> int:
    cfg = ScanConfig(
        d_range=args.d_range, g_range=args.g_range, r_range=args.r_range,
        filters=tuple(args.filter or ()), fmt=args.format,
        out=Path(args.out) if args.out else None,
        bound=args.bound, strict_a=args.strict_a, jobs=args.jobs,
    )
    rows = run_scan(cfg)
    write_output(render(rows, cfg.fmt), cfg.out)
    return 0


def cmd_bn_divisors(args) -> int:
    sols = bn_divisor_solutions(args.g)
    rows = [(r, d, brill_noether_number(Params(d, args.g, r))) for r, d in sols]
    if args.format == "json":
        text = json.dumps([{"r": r, "d": d, "rho": rho} for r, d, rho in rows], indent=2) + "\n"
    elif args.format == "csv":
        text = "r,d,rho\n" + "".join(f"{r},{d},{rho}\n" for r, d, rho in rows)
    else:
        text = "".join(f"({r},{d}) rho={rho}\n" for r, d, rho in rows)
    write_output(text, args.out)
    return 0


def cmd_qform(args) -> int:
    p = Params(args.d, args.g, args.r)
    f = BinaryQuadForm.from_params(p)
    res = represents(f, args.target, args.bound)
    square = is_perfect_square(f.disc)
    if args.format == "json":
        text = json.dumps({"form": [f.a, f.b, f.c], **res.to_dict(), "disc": f.disc,
                           "disc_square": square}, indent=2) + "\n"
    else:
        text = f"{res}, Δ={f.disc}, square={'true' if square else 'false'}\n"
    write_output(text, args.out)
    return 0


def cmd_alpha(args) -> int:
    p = Params(args.d, args.g, args.r)
    rep = compute_alpha(p, args.require_hypotheses, strict_a=args.strict_a, bound=args.bound)
    if args.format == "json":
        text = json.dumps(rep.to_dict(), indent=2) + "\n"
    else:
        body = [[str(D.m), str(D.n), str(f_value(p, D)), "*" if D in rep.minimizers else ""]
                for D in rep.enumerated]
        text = (f"alpha: {_plain(rep.alpha)}\n"
                f"minimizers: {format_minimizers(rep.minimizers) or '-'}\n"
                f"n_range: {rep.n_range[0]}..{rep.n_range[1]}\n"
                f"guaranteed: {_plain(rep.guaranteed)}\n"
                + render_table(["m", "n", "f", "min"], body))
    write_output(text, args.out)
    return 0


def cmd_h1(args) -> int:
    p = Params(args.d, args.g, 3)
    report = {"d": p.d, "g": p.g, "h1_vanishes": h1_normal_vanishes(p.d, p.g)}
    L = K3Lattice(p, bound=args.bound)
    D = C - 4 * H
    report["lattice_certified"] = L.certified
    report["c_minus_4h_sq"] = self_int(L, D)
    report["c_minus_4h_dot_h"] = p.d - 16
    report["c_minus_4h_effective"] = is_effective(L, D) if L.certified else None
    write_output(_dump(report, args.format), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="box size for representability searches")
    common.add_argument("--strict-a", action="store_true",
                        help="also require (C-D)^2 > 0 in the constraint set")

    ap = argparse.ArgumentParser(prog="k3gon", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", parents=[common], help="full report for one (d, g, r)")
    for name in ("d", "g", "r"):
        sp.add_argument(name, type=int)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("scan", parents=[common], help="scan a box of (d, g, r)")
    sp.add_argument("--d", dest="d_range", type=parse_range, required=True, metavar="A..B")
    sp.add_argument("--g", dest="g_range", type=parse_range, required=True, metavar="A..B")
    sp.add_argument("--r", dest="r_range", type=parse_range, default=(3, 3), metavar="A..B")
    sp.add_argument("--filter", action="append", choices=("thm1", "thm3"))
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("bn-divisors", parents=[common], help="(r, d) with rho(g, r, d) = -1")
    sp.add_argument("g", type=int)
    sp.set_defaults(func=cmd_bn_divisors)

    sp = sub.add_parser("qform", parents=[common], help="representability by the lattice form")
    for name in ("d", "g", "r"):
        sp.add_argument(name, type=int)
    sp.add_argument("--target", type=int, default=-1)
    sp.set_defaults(func=cmd_qform)

    sp = sub.add_parser("alpha", parents=[common], help="minimum of D.C - D^2 over A")
    for name in ("d", "g", "r"):
        sp.add_argument(name, type=int)
    sp.add_argument("--require-hypotheses", action="store_true",
                    help="fail with exit 2 unless the theorem's hypotheses hold")
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("h1", parents=[common], help="normal bundle regularity for r = 3")
    sp.add_argument("d", type=int)
    sp.add_argument("g", type=int)
    sp.set_defaults(func=cmd_h1)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalInvariantViolation as exc:
        print(f"k3gon: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (K3GonError, ValueError, TypeError) as exc:
        print(f"k3gon: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
