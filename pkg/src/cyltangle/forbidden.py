"""Impossibility certificates inside chirality matrices.

Two principal submatrices certify that a configuration cannot have all
cylinders in mutual pairwise contact:

* the 5x5 all-(+1) matrix and everything reachable from it by switching,
  permutation, or mirroring -- exactly the 5x5 Seidel matrices with
  |det| = 4, so a single determinant test detects the whole family;
* the unique K5-free 7x7 switching class with |det| = 250.

Detection scans principal subsets in lexicographic order, optionally
restricted to subsets through one index (used when a known-clean matrix was
extended by one line, so any new witness must involve the new line).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Optional, Sequence

import numpy as np

from . import _batch
from .seidel import ChiralityMatrix, det_bareiss, from_upper_bits, upper_bits, validate

__all__ = [
    "SubmatrixWitness",
    "EESwitchRow",
    "EESwitchReport",
    "NoEEPairs",
    "NegativeRadius",
    "k5_switch_forms",
    "k5_key_table",
    "contains_k5",
    "contains_p250",
    "p250_key_table",
    "p250_representative",
    "ee_switch_property",
    "radii_determinant",
]


class NoEEPairs(ValueError):
    pass


class NegativeRadius(ValueError):
    pass


@dataclass(frozen=True)
class SubmatrixWitness:
    indices: tuple[int, ...]
    kind: str  # "K5" or "P250"
    det: int

    def __post_init__(self):
        want = {"K5": 4, "P250": 250}[self.kind]
        if abs(self.det) != want:
            raise ValueError(f"{self.kind} witness must have |det|={want}")
        if list(self.indices) != sorted(self.indices):
            raise ValueError("witness indices must be strictly ascending")

    def __str__(self) -> str:
        return f"{self.kind} {' '.join(map(str, self.indices))} det={self.det}"


def _det5(m: Sequence[Sequence[int]]) -> int:
    """Unrolled exact 5x5 determinant (cofactors down to 2x2)."""

    def d2(a, b, c, d):
        return a * d - b * c

    def d3(r0, r1, r2):
        return (
            r0[0] * d2(r1[1], r1[2], r2[1], r2[2])
            - r0[1] * d2(r1[0], r1[2], r2[0], r2[2])
            + r0[2] * d2(r1[0], r1[1], r2[0], r2[1])
        )

    def d4(rows):
        total = 0
        sign = 1
        for c in range(4):
            cols = [x for x in range(4) if x != c]
            minor = [[rows[r][x] for x in cols] for r in (1, 2, 3)]
            total += sign * rows[0][c] * d3(*minor)
            sign = -sign
        return total

    total = 0
    sign = 1
    for c in range(5):
        cols = [x for x in range(5) if x != c]
        minor = [[m[r][x] for x in cols] for r in (1, 2, 3, 4)]
        total += sign * m[0][c] * d4(minor)
        sign = -sign
    return total


@lru_cache(maxsize=1)
def k5_key_table() -> np.ndarray:
    """bool[1024]: which packed 5x5 Seidel matrices have |det| = 4."""
    tab = np.zeros(1024, dtype=bool)
    for key in range(1024):
        m = from_upper_bits(key, 5).to_lists()
        if abs(_det5(m)) == 4:
            tab[key] = True
    tab.setflags(write=False)
    return tab


def k5_switch_forms() -> list[ChiralityMatrix]:
    """The 32 sign-diagonal conjugates D (+-K5) D with D[0][0] = +1.

    Independent of the determinant table; used as a detection oracle.
    """
    forms = []
    seen = set()
    for base_sign in (1, -1):
        base = [[0 if i == k else base_sign for k in range(5)] for i in range(5)]
        for mask in range(16):
            d = [1] + [1 if (mask >> b) & 1 else -1 for b in range(4)]
            rows = tuple(
                tuple(d[i] * base[i][k] * d[k] for k in range(5)) for i in range(5)
            )
            if rows not in seen:
                seen.add(rows)
                forms.append(ChiralityMatrix(rows))
    return forms


def _subsets(n: int, size: int, restrict_to: Optional[int]):
    if restrict_to is None:
        yield from combinations(range(n), size)
        return
    others = [i for i in range(n) if i != restrict_to]
    for rest in combinations(others, size - 1):
        yield tuple(sorted(rest + (restrict_to,)))


def contains_k5(
    P: ChiralityMatrix, restrict_to: Optional[int] = None
) -> Optional[SubmatrixWitness]:
    """Lexicographically first 5-subset whose principal submatrix has |det| = 4."""
    if P.n < 5:
        return None
    tab = k5_key_table()
    for sub in _subsets(P.n, 5, restrict_to):
        key = upper_bits(P, sub)
        if tab[key]:
            m = [[P.rows[a][b] for b in sub] for a in sub]
            return SubmatrixWitness(tuple(sub), "K5", _det5(m))
    return None


def _k5_free_7x7_key(key: int) -> bool:
    tab = k5_key_table()
    pp7 = _batch.pair_positions(7)
    for sub in combinations(range(7), 5):
        bits = 0
        for c, (i, j) in enumerate(_batch.pair_positions(5)):
            bits |= ((key >> pp7.index((sub[i], sub[j]))) & 1) << c
        if tab[bits]:
            return False
    return True


def contains_p250(
    P: ChiralityMatrix, restrict_to: Optional[int] = None
) -> Optional[SubmatrixWitness]:
    """Lexicographically first 7-subset in the K5-free |det|=250 class.

    |det| = 250 alone is not enough: a 7x7 submatrix containing K5 can reach
    the same determinant, so the subset must also pass the K5 scan.
    """
    if P.n < 7:
        return None
    for sub in _subsets(P.n, 7, restrict_to):
        m = [[P.rows[a][b] for b in sub] for a in sub]
        d = det_bareiss(m)
        if abs(d) != 250:
            continue
        if contains_k5(validate(m)) is None:
            return SubmatrixWitness(tuple(sub), "P250", d)
    return None


@lru_cache(maxsize=1)
def p250_key_table() -> np.ndarray:
    """bool[2^21]: packed 7x7 Seidel matrices that are K5-free with |det|=250.

    Built exactly: determinants via the modular characteristic polynomial
    (|det| <= 576 for 7x7 sign matrices, far below the prime), K5-freeness by
    table lookup on all 21 5-subsets.
    """
    total = 1 << 21
    keys = np.arange(total, dtype=np.int64)
    tab5 = k5_key_table()
    pp7 = _batch.pair_positions(7)
    k5hit = np.zeros(total, dtype=bool)
    for sub in combinations(range(7), 5):
        bits = np.zeros(total, dtype=np.int64)
        for c, (i, j) in enumerate(_batch.pair_positions(5)):
            gpos = pp7.index((sub[i], sub[j]))
            bits |= ((keys >> gpos) & 1) << c
        k5hit |= tab5[bits]
    det250 = np.zeros(total, dtype=bool)
    chunk = 1 << 17
    for s in range(0, total, chunk):
        mats = _batch.mats_from_bits(keys[s : s + chunk], 7)
        d = _batch.det_mod_signed(mats)
        det250[s : s + chunk] = np.abs(d) == 250
    tab = det250 & ~k5hit
    tab.setflags(write=False)
    return tab


@lru_cache(maxsize=1)
def p250_representative() -> ChiralityMatrix:
    """The unique K5-free 7x7 class with determinant +250.

    Obtained by filtering the 22 K5-free classes from the enumeration; the
    published figure shows this configuration only as a pencil model, not as
    printed matrix entries.
    """
    from .enumeration import enumerate_base, extend

    cat = extend(enumerate_base(6), frozenset({"k5"}))
    hits = [rep for rep in cat.reps if rep.determinant() == 250]
    if len(hits) != 1:
        raise RuntimeError(f"expected exactly one det=+250 K5-free class, got {len(hits)}")
    return hits[0]


@dataclass(frozen=True)
class EESwitchRow:
    pair: tuple[int, int]
    k5_witness: Optional[SubmatrixWitness]
    det_after: int


@dataclass(frozen=True)
class EESwitchReport:
    rows: tuple[EESwitchRow, ...]

    def all_create_k5(self) -> bool:
        return all(r.k5_witness is not None for r in self.rows)

    def none_create_k5(self) -> bool:
        return all(r.k5_witness is None for r in self.rows)


def ee_switch_property(P: ChiralityMatrix) -> EESwitchReport:
    """Switch the chirality inside each equal-environment pair and report
    whether K5 appears.

    For every K5-free 7x7 class with an EE pair this creates K5 -- except the
    |det| = 250 class, whose determinant merely flips sign.
    """
    pairs = P.ee_pairs()
    if not pairs:
        raise NoEEPairs("matrix has no equal-environment pairs")
    rows = []
    for i, k in pairs:
        switched = P.switch_entry(i, k)
        rows.append(
            EESwitchRow((i, k), contains_k5(switched), switched.determinant())
        )
    return EESwitchReport(tuple(rows))


def radii_determinant(
    P: ChiralityMatrix, radii: Sequence[Fraction | int]
) -> Fraction:
    """Exact determinant of M[i][k] = P[i][k] * (r_i + r_k) with zero diagonal.

    Radii are taken as exact rationals; the matrix is scaled to integers by
    the common denominator and eliminated fraction-free.
    """
    n = P.n
    if len(radii) != n:
        raise ValueError(f"expected {n} radii, got {len(radii)}")
    rs = [Fraction(r) for r in radii]
    for r in rs:
        if r < 0:
            raise NegativeRadius(f"radius {r} is negative")
    den = lcm(*(r.denominator for r in rs)) if rs else 1
    scaled = [int(r * den) for r in rs]
    m = [
        [
            0 if i == k else P.rows[i][k] * (scaled[i] + scaled[k])
            for k in range(n)
        ]
        for i in range(n)
    ]
    return Fraction(det_bareiss(m), den**n)
