"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Errors are emitted as a single JSON line on stderr so CI can consume them.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from . import enumeration as enum_mod
from .formats import MatrixTextError, format_matrix_text, read_matrix_text
from .forbidden import contains_k5, contains_p250
from .geometry import (
    AngleConvention,
    DEFAULT_CONVENTION,
    GeometryError,
    axis_segments,
    calibrate_convention,
    realize,
    ring_matrix_from_geometry,
    chirality_from_geometry,
)
from .invariants import decimal10, wp
from .seidel import MatrixError, validate


def _fail(kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return 2


def _load_config_entry(path: str) -> cat.CatalogEntry:
    entries = cat.ingest(path)
    if len(entries) != 1 or entries[0].config is None:
        raise cat.ParseError(path, "expected a single configuration file with lines")
    return entries[0]


def cmd_verify(args) -> int:
    entries = cat.ingest(args.path)
    report = cat.verify_catalog(entries, tol=args.tol, reference=args.reference)
    print(f"convention: {report.convention.value}")
    for row in report.entries:
        print(row.line())
    print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def cmd_classify(args) -> int:
    P = validate(read_matrix_text(args.matrix))
    cp = P.char_poly()
    print(f"n {P.n}")
    print(f"det {P.determinant()}")
    print("char_poly " + " ".join(str(c) for c in cp.coeffs))
    pairs = P.ee_pairs()
    print("ee_pairs " + (" ".join(f"{i},{k}" for i, k in pairs) if pairs else "none"))
    w5 = contains_k5(P)
    print(str(w5) if w5 else "K5 none")
    w250 = contains_p250(P)
    print(str(w250) if w250 else "P250 none")
    return 0


def cmd_invariant(args) -> int:
    entry = _load_config_entry(args.config)
    conv = AngleConvention(args.convention)
    lines = realize(entry.config, conv)
    P = chirality_from_geometry(lines)
    R = ring_matrix_from_geometry(lines)
    print("P:")
    print(format_matrix_text(P.to_lists()), end="")
    print("R:")
    print(format_matrix_text([list(r) for r in R.rows]), end="")
    w = wp(P, R)
    wm = wp(P.mirror(), R)
    print(f"wp {decimal10(w)}")
    print(f"wp_mirror {decimal10(wm)}")
    print(f"wp_ring {decimal10(w + wm)}")
    return 0


def cmd_calibrate(args) -> int:
    entry = _load_config_entry(args.config)
    conv = calibrate_convention(entry.config, tol=args.tol)
    print(conv.value)
    return 0


def cmd_enumerate(args) -> int:
    filters = frozenset(f for f in args.filter.split(",") if f) if args.filter else frozenset()
    report = enum_mod.run_chain(filters, max_n=args.max_n, audit=args.audit)
    enum_mod.write_outputs(Path(args.out), report)
    for n, count in sorted(report.counts.items()):
        print(f"n={n} {','.join(sorted(filters)) or 'none'} {count}")
    if args.audit:
        print(f"audit {'ok' if report.audit_ok else 'FAIL'}")
        if not report.audit_ok:
            return 1
    return 0


def cmd_export_geometry(args) -> int:
    entry = _load_config_entry(args.config)
    conv = AngleConvention(args.convention)
    lines = realize(entry.config, conv)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["line", "x1", "y1", "z1", "x2", "y2", "z2"])
        for i, p0, p1 in axis_segments(lines, args.length):
            writer.writerow([i, *(f"{v:.12g}" for v in (*p0, *p1))])
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyltangle",
        description="Classify and verify configurations of mutually touching cylinders",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a catalog directory end to end")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--reference", default="a89", help="entry used to calibrate angles")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="det/char poly/EE/forbidden witnesses of a matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("invariant", help="compute P, R, and invariants of a configuration")
    p.add_argument("config")
    p.add_argument("--convention", default=DEFAULT_CONVENTION.value,
                   choices=[c.value for c in AngleConvention])
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("calibrate", help="select the angle convention from a reference")
    p.add_argument("config")
    p.add_argument("--tol", type=float, default=1e-5)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("enumerate", help="switching-class enumeration with filters")
    p.add_argument("--filter", default="", help="comma-separated: k5,p250")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--audit", action="store_true",
                   help="full forbidden-submatrix re-scan of every representative")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("export-geometry", help="axis segments as CSV for plotting")
    p.add_argument("config")
    p.add_argument("--length", type=float, default=10.0)
    p.add_argument("--out", required=True)
    p.add_argument("--convention", default=DEFAULT_CONVENTION.value,
                   choices=[c.value for c in AngleConvention])
    p.set_defaults(func=cmd_export_geometry)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (cat.ParseError, cat.DuplicateName, MatrixTextError, MatrixError) as exc:
        return _fail(type(exc).__name__, str(exc))
    except (GeometryError, cat.TableMismatch, enum_mod.CountMismatch) as exc:
        return _fail(type(exc).__name__, str(exc))
    except FileNotFoundError as exc:
        return _fail("FileNotFound", str(exc))
    except ValueError as exc:
        return _fail("ValueError", str(exc))


if __name__ == "__main__":
    sys.exit(main())
