"""Exhaustive switching-class enumeration with forbidden-submatrix pruning.

The pipeline mirrors the growth strategy of the original search program:
start from all Seidel matrices of a small base size deduplicated by spectrum,
then repeatedly append one line (all 2^n sign vectors), discard candidates
that acquire a forbidden submatrix, and deduplicate again.

Two performance choices keep a full run to n = 19 in seconds instead of
hours, without giving up exactness:

* Forbidden-submatrix pruning is precomputed into bitmask tables.  For a
  fixed parent matrix, whether a candidate sign vector creates a K5 on a
  subset through the new line depends only on 4 bits of the vector (6 parent
  entries are fixed), so each 4-subset contributes one 16-bit bad-pattern
  mask applied to all 2^n candidates at once with numpy.  The P250 filter
  works the same way over 6-subsets with 64-bit masks.
* Deduplication keys are characteristic polynomials modulo two 31-bit
  primes, computed batched (see _batch).  For n <= 19 the exact coefficients
  are bounded far below the product of the primes, so the residue pairs are
  collision-free and the grouping is exactly by characteristic polynomial.
  Exact big-integer polynomials are then computed once per class.

Representatives are sorted by characteristic-polynomial coefficients, so
catalogs are byte-stable across runs.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np

from . import _batch
from .forbidden import contains_k5, contains_p250, k5_key_table, p250_key_table
from .formats import write_matrix_text
from .seidel import CharPoly, ChiralityMatrix, from_upper_bits

__all__ = [
    "ClassCatalog",
    "DimensionTooLarge",
    "CountMismatch",
    "enumerate_base",
    "extend",
    "determinant_spectrum",
    "audit_catalog",
    "run_theorem1",
    "run_theorem2",
    "run_chain",
    "conference_charpoly",
    "THEOREM1_COUNTS",
]

MAX_BASE = 6

#: Published K5-filtered class counts, n = 7..19.
THEOREM1_COUNTS = {
    7: 22, 8: 51, 9: 105, 10: 172, 11: 142, 12: 61, 13: 8,
    14: 5, 15: 2, 16: 1, 17: 1, 18: 1, 19: 0,
}

FILTERS = frozenset({"k5", "p250"})


class DimensionTooLarge(ValueError):
    pass


class CountMismatch(RuntimeError):
    def __init__(self, n: int, got: int, expected: int):
        super().__init__(f"n={n}: got {got} classes, published count is {expected}")
        self.n = n
        self.got = got
        self.expected = expected


@dataclass(frozen=True)
class ClassCatalog:
    n: int
    filters: frozenset[str]
    reps: tuple[ChiralityMatrix, ...]
    keys: tuple[CharPoly, ...]

    def __post_init__(self):
        if len(set(self.keys)) != len(self.keys):
            raise ValueError("catalog keys must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.reps)


def _sorted_catalog(
    n: int, filters: frozenset[str], mats: list[ChiralityMatrix]
) -> ClassCatalog:
    keyed = sorted(((m.char_poly(), m) for m in mats), key=lambda t: t[0].coeffs)
    reps = tuple(m for _, m in keyed)
    keys = tuple(k for k, _ in keyed)
    return ClassCatalog(n, filters, reps, keys)


def enumerate_base(n: int) -> ClassCatalog:
    """All n x n Seidel switching classes by full sweep (n <= 6)."""
    if not 2 <= n <= MAX_BASE:
        raise DimensionTooLarge(f"full sweep supported for 2 <= n <= {MAX_BASE}")
    nbits = n * (n - 1) // 2
    keys = np.arange(1 << nbits, dtype=np.int64)
    mats = _batch.mats_from_bits(keys, n)
    dk = _batch.dedup_keys(mats)
    seen: dict[bytes, int] = {}
    for idx in range(1 << nbits):
        t = dk[idx].tobytes()
        if t not in seen:
            seen[t] = idx
    reps = [from_upper_bits(b, n) for b in seen.values()]
    return _sorted_catalog(n, frozenset(), reps)


# --- candidate pruning tables -------------------------------------------

_PB5 = (0, 1, 2, 4, 5, 7)  # 5x5 key bits holding the 6 parent entries
_VB5 = (3, 6, 8, 9)  # 5x5 key bits holding the 4 new-line entries
_PP7 = _batch.pair_positions(7)
_VPOS7 = tuple(_PP7.index((i, 6)) for i in range(6))
_PPOS7 = tuple(c for c in range(21) if c not in _VPOS7)


@lru_cache(maxsize=1)
def _bad16_table() -> np.ndarray:
    """For each 6-bit parent pattern of a 4-subset: the 16-bit mask of
    new-line sign patterns that complete it to a K5-class 5x5."""
    tab5 = k5_key_table()
    out = np.zeros(64, dtype=np.uint32)
    for pk in range(64):
        base = 0
        for b, pos in enumerate(_PB5):
            if (pk >> b) & 1:
                base |= 1 << pos
        mask = 0
        for pat in range(16):
            key = base
            for b, pos in enumerate(_VB5):
                if (pat >> b) & 1:
                    key |= 1 << pos
            if tab5[key]:
                mask |= 1 << pat
        out[pk] = mask
    out.setflags(write=False)
    return out


@lru_cache(maxsize=1)
def _bad64_table() -> np.ndarray:
    """For each 15-bit parent pattern of a 6-subset: the 64-bit mask of
    new-line sign patterns that complete it to the P250 class."""
    tab7 = p250_key_table()
    keys = np.arange(1 << 21, dtype=np.int64)
    parent = np.zeros(1 << 21, dtype=np.int64)
    for b, pos in enumerate(_PPOS7):
        parent |= ((keys >> pos) & 1) << b
    pat = np.zeros(1 << 21, dtype=np.int64)
    for b, pos in enumerate(_VPOS7):
        pat |= ((keys >> pos) & 1) << b
    out = np.zeros(1 << 15, dtype=np.uint64)
    hits = tab7.astype(np.uint64) << pat.astype(np.uint64)
    np.bitwise_or.at(out, parent, hits)
    out.setflags(write=False)
    return out


def _k5_kill_mask(rows: list[list[int]], n: int) -> np.ndarray:
    bad16 = _bad16_table()
    full = np.arange(1 << n, dtype=np.int64)
    killed = np.zeros(1 << n, dtype=bool)
    for sub in combinations(range(n), 4):
        pk = 0
        for b, (x, y) in enumerate(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))):
            if rows[sub[x]][sub[y]] > 0:
                pk |= 1 << b
        bad = int(bad16[pk])
        if not bad:
            continue
        pat = (
            ((full >> sub[0]) & 1)
            | (((full >> sub[1]) & 1) << 1)
            | (((full >> sub[2]) & 1) << 2)
            | (((full >> sub[3]) & 1) << 3)
        )
        killed |= (bad >> pat) & 1 != 0
    return killed


def _p250_kill_mask(rows: list[list[int]], n: int) -> np.ndarray:
    bad64 = _bad64_table()
    full = np.arange(1 << n, dtype=np.int64)
    killed = np.zeros(1 << n, dtype=bool)
    pairs6 = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    for sub in combinations(range(n), 6):
        pk = 0
        for b, (x, y) in enumerate(pairs6):
            if rows[sub[x]][sub[y]] > 0:
                pk |= 1 << b
        bad = bad64[pk]
        if not bad:
            continue
        pat = np.zeros(1 << n, dtype=np.uint64)
        for b in range(6):
            pat |= (((full >> sub[b]) & 1) << b).astype(np.uint64)
        killed |= (bad >> pat) & np.uint64(1) != 0
    return killed


def _parents_clean(catalog: ClassCatalog, filters: frozenset[str]) -> list[ChiralityMatrix]:
    """Drop representatives that violate a requested filter the catalog was
    not built with.  Containment is hereditary under extension, so checking
    only new-line subsets afterwards stays sound."""
    reps = list(catalog.reps)
    missing = filters - catalog.filters
    if "k5" in missing and catalog.n >= 5:
        reps = [r for r in reps if contains_k5(r) is None]
    if "p250" in missing and catalog.n >= 7:
        reps = [r for r in reps if contains_p250(r) is None]
    return reps


def extend(catalog: ClassCatalog, filters: frozenset[str] | set[str]) -> ClassCatalog:
    """All classes one line larger that pass the requested filters.

    Appends the new line at the highest index; filter checks on candidates
    are restricted to subsets through the new line because the parent is
    already clean.
    """
    filters = frozenset(filters)
    if not filters <= FILTERS:
        raise ValueError(f"unknown filters: {sorted(filters - FILTERS)}")
    n = catalog.n
    reps = _parents_clean(catalog, filters)
    found: dict[bytes, ChiralityMatrix] = {}
    for rep in reps:
        rows = rep.to_lists()
        killed = np.zeros(1 << n, dtype=bool)
        if "k5" in filters and n >= 4:
            killed |= _k5_kill_mask(rows, n)
        if "p250" in filters and n >= 6:
            killed |= _p250_kill_mask(rows, n)
        survivors = np.nonzero(~killed)[0]
        if len(survivors) == 0:
            continue
        batch = np.zeros((len(survivors), n + 1, n + 1), dtype=np.int64)
        batch[:, :n, :n] = np.asarray(rows, dtype=np.int64)
        for b in range(n):
            v = ((survivors >> b) & 1) * 2 - 1
            batch[:, b, n] = v
            batch[:, n, b] = v
        dk = _batch.dedup_keys(batch)
        for idx in range(len(survivors)):
            t = dk[idx].tobytes()
            if t not in found:
                found[t] = ChiralityMatrix(
                    tuple(tuple(int(v) for v in brow) for brow in batch[idx])
                )
    cat = _sorted_catalog(n + 1, filters, list(found.values()))
    if len(cat) != len(found):
        raise RuntimeError("modular dedup keys disagree with exact polynomials")
    return cat


def determinant_spectrum(catalog: ClassCatalog) -> list[int]:
    """Sorted distinct |det| values over the class representatives."""
    return sorted({abs(k.det()) for k in catalog.keys})


def audit_catalog(catalog: ClassCatalog) -> bool:
    """Full re-scan of every representative against the catalog's filters
    (not just subsets through the last-added line)."""
    for rep in catalog.reps:
        if "k5" in catalog.filters and contains_k5(rep) is not None:
            return False
        if "p250" in catalog.filters and contains_p250(rep) is not None:
            return False
    return True


def conference_charpoly(half: int, a: int) -> CharPoly:
    """Expanded (x^2 - a)^half as a monic coefficient vector."""
    coeffs = [0] * (2 * half + 1)
    for k in range(half + 1):
        coeffs[2 * k] = math.comb(half, k) * (-a) ** k
    return CharPoly(tuple(coeffs))


@dataclass(frozen=True)
class ChainReport:
    filters: frozenset[str]
    counts: dict[int, int]
    catalogs: dict[int, ClassCatalog]
    elapsed: float
    audit_ok: bool | None = None


def run_chain(
    filters: frozenset[str] | set[str],
    max_n: int,
    base_n: int = MAX_BASE,
    audit: bool = False,
    stop_when_empty: bool = True,
) -> ChainReport:
    t0 = time.perf_counter()
    filters = frozenset(filters)
    cat = enumerate_base(base_n)
    counts = {base_n: len(cat)}
    catalogs = {base_n: cat}
    for n in range(base_n, max_n):
        cat = extend(cat, filters)
        counts[cat.n] = len(cat)
        catalogs[cat.n] = cat
        if stop_when_empty and len(cat) == 0:
            break
    audit_ok = None
    if audit:
        audit_ok = all(audit_catalog(c) for c in catalogs.values())
    return ChainReport(filters, counts, catalogs, time.perf_counter() - t0, audit_ok)


def run_theorem1(out_dir: str | Path | None = None, audit: bool = False) -> ChainReport:
    """K5-filtered chain: class counts must match the published sequence,
    ending empty at n = 19 with a unique n = 18 class of spectrum
    (x^2 - 17)^9."""
    report = run_chain({"k5"}, max_n=19, audit=audit, stop_when_empty=False)
    for n, expected in THEOREM1_COUNTS.items():
        got = report.counts.get(n)
        if got != expected:
            raise CountMismatch(n, -1 if got is None else got, expected)
    top = report.catalogs[18]
    if top.keys[0] != conference_charpoly(9, 17):
        raise RuntimeError("n=18 representative has unexpected characteristic polynomial")
    if out_dir is not None:
        write_outputs(Path(out_dir), report, label="theorem1")
    return report


def run_theorem2(out_dir: str | Path | None = None, audit: bool = False) -> ChainReport:
    """K5- and P250-filtered chain: a unique class at n = 14 with spectrum
    (x^2 - 13)^7 and none at n = 15."""
    report = run_chain({"k5", "p250"}, max_n=15, audit=audit, stop_when_empty=False)
    if report.counts.get(14) != 1:
        raise CountMismatch(14, report.counts.get(14, -1), 1)
    if report.counts.get(15) != 0:
        raise CountMismatch(15, report.counts.get(15, -1), 0)
    if report.catalogs[14].keys[0] != conference_charpoly(7, 13):
        raise RuntimeError("n=14 representative has unexpected characteristic polynomial")
    if out_dir is not None:
        write_outputs(Path(out_dir), report, label="theorem2")
    return report


def _filters_label(filters: frozenset[str]) -> str:
    return ",".join(sorted(filters)) if filters else "none"


def write_outputs(out_dir: Path, report: ChainReport, label: str | None = None) -> None:
    """counts.tsv, reps/n<k>_<index>.mat, and report.json under out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    flabel = _filters_label(report.filters)
    lines = [f"{n}\t{flabel}\t{count}" for n, count in sorted(report.counts.items())]
    (out_dir / "counts.tsv").write_text("\n".join(lines) + "\n")
    reps_dir = out_dir / "reps"
    reps_dir.mkdir(exist_ok=True)
    for n, cat in sorted(report.catalogs.items()):
        for idx, rep in enumerate(cat.reps):
            write_matrix_text(reps_dir / f"n{n}_{idx}.mat", rep.to_lists())
    payload = {
        "label": label,
        "filters": sorted(report.filters),
        "counts": {str(n): c for n, c in sorted(report.counts.items())},
        "elapsed_seconds": report.elapsed,
        "audit_ok": report.audit_ok,
        "char_polys": {
            str(n): [list(k.coeffs) for k in cat.keys]
            for n, cat in sorted(report.catalogs.items())
        },
    }
    (out_dir / "report.json").write_text(json.dumps(payload, indent=2) + "\n")
