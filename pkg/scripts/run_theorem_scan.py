#!/usr/bin/env python3
"""Run both forbidden-submatrix enumeration chains and write their outputs.

Reproduces the class-count sequences, the unique extremal classes at n = 18
(spectrum (x^2 - 17)^9) and n = 14 (spectrum (x^2 - 13)^7), and the empty
levels right above them.
"""
import argparse
from pathlib import Path

from cyltangle.enumeration import run_theorem1, run_theorem2


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results", help="output directory")
    ap.add_argument("--audit", action="store_true",
                    help="full re-scan of every representative (slow)")
    args = ap.parse_args()
    out = Path(args.out)

    r1 = run_theorem1(out / "theorem1", audit=args.audit)
    print(f"max-18 chain ({r1.elapsed:.1f}s):")
    for n, c in sorted(r1.counts.items()):
        print(f"  n={n:2d}  {c} classes")

    r2 = run_theorem2(out / "theorem2", audit=args.audit)
    print(f"max-14 chain ({r2.elapsed:.1f}s):")
    for n, c in sorted(r2.counts.items()):
        print(f"  n={n:2d}  {c} classes")

    if args.audit:
        print(f"audit: theorem1 {'ok' if r1.audit_ok else 'FAIL'}, "
              f"theorem2 {'ok' if r2.audit_ok else 'FAIL'}")
    print(f"outputs in {out}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
