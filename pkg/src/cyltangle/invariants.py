"""Orientation-free Q matrices, ring matrices, and the numerical invariants.

The Q matrix removes the orientation dependence of a chirality matrix P: for
each row i, flip every line j with P[i][j] = -1 so the row becomes all +1s,
then record the column sums of the switched matrix.  That procedure collapses
to the closed form

    Q[i][k] = 1 + P[i][k] * (P^2)[i][k]   (i != k),      Q[i][i] = n - 1,

which is what we compute.  The scalar invariant is the exact rational
tr[Q (I - R)^(-1)] for a ring matrix R; its mirror-insensitive companion adds
the same trace for -P.  Published tables print these rounded to 10 decimals,
so comparison happens on decimal strings, never on floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .seidel import ChiralityMatrix

__all__ = [
    "QMatrix",
    "RingMatrix",
    "RingVector",
    "RingMatrixError",
    "RowSumNotDivisibleBy3",
    "SingularIMinusR",
    "DimensionMismatch",
    "q_matrix",
    "ring_vector",
    "wp",
    "wp_ring",
    "complement_identity_check",
    "decimal10",
]


class RingMatrixError(ValueError):
    pass


class RowSumNotDivisibleBy3(RingMatrixError):
    def __init__(self, row: int, total: int):
        super().__init__(f"row {row} sums to {total}, not divisible by 3")
        self.row = row


class SingularIMinusR(ValueError):
    """(I - R) is singular; the invariant is undefined for this configuration."""


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QMatrix:
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))


@dataclass(frozen=True)
class RingMatrix:
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def zero_rows(self) -> list[int]:
        """Indices of all-zero rows: the unknotted (ring-free) lines."""
        return [i for i, r in enumerate(self.rows) if not any(r)]


@dataclass(frozen=True)
class RingVector:
    counts: tuple[int, ...]


def validate_ring(raw: Iterable[Iterable[int]]) -> RingMatrix:
    """Validate shape, zero diagonal, and per-entry bound C(n-2, 2)."""
    rows = tuple(tuple(int(v) for v in row) for row in raw)
    n = len(rows)
    cap = comb(n - 2, 2) if n >= 2 else 0
    for i, row in enumerate(rows):
        if len(row) != n:
            raise RingMatrixError(f"row {i} has length {len(row)}, expected {n}")
        for k, v in enumerate(row):
            if i == k and v != 0:
                raise RingMatrixError(f"diagonal entry ({i},{i}) must be 0")
            if v < 0:
                raise RingMatrixError(f"entry ({i},{k}) is negative")
            if i != k and v > cap:
                raise RingMatrixError(f"entry ({i},{k})={v} exceeds C(n-2,2)={cap}")
    return RingMatrix(rows)


def q_matrix(P: ChiralityMatrix) -> QMatrix:
    n = P.n
    p2 = [
        [sum(P.rows[i][m] * P.rows[m][k] for m in range(n)) for k in range(n)]
        for i in range(n)
    ]
    rows = tuple(
        tuple(n - 1 if i == k else 1 + P.rows[i][k] * p2[i][k] for k in range(n))
        for i in range(n)
    )
    return QMatrix(rows)


def ring_vector(R: RingMatrix) -> RingVector:
    """Per-line encaging-ring counts: each ring contributes 3 to its row."""
    counts = []
    for i, total in enumerate(R.row_sums()):
        if total % 3 != 0:
            raise RowSumNotDivisibleBy3(i, total)
        counts.append(total // 3)
    return RingVector(tuple(counts))


def _solve_trace(Q: QMatrix, R: RingMatrix) -> Fraction:
    """Exact tr[Q (I - R)^(-1)] by rational Gaussian elimination."""
    n = Q.n
    A = [
        [Fraction(1 if i == k else 0) - R.rows[i][k] for k in range(n)]
        for i in range(n)
    ]
    # Solve A X = Q^T columnwise; tr(Q A^{-1}) = sum_i (A^{-1} Q)[i][i] with Q symmetric.
    B = [[Fraction(Q.rows[i][k]) for k in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise SingularIMinusR("(I - R) is singular")
        A[c], A[piv] = A[piv], A[c]
        B[c], B[piv] = B[piv], B[c]
        inv = Fraction(1) / A[c][c]
        A[c] = [x * inv for x in A[c]]
        B[c] = [x * inv for x in B[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
                B[r] = [x - f * y for x, y in zip(B[r], B[c])]
    return sum((B[i][i] for i in range(n)), Fraction(0))


def wp(P: ChiralityMatrix, R: RingMatrix) -> Fraction:
    """The invariant tr[Q(P) (I - R)^(-1)], exact."""
    if P.n != R.n:
        raise DimensionMismatch(f"P is {P.n}x{P.n} but R is {R.n}x{R.n}")
    return _solve_trace(q_matrix(P), R)


def wp_ring(P: ChiralityMatrix, R: RingMatrix) -> Fraction:
    """Mirror-insensitive companion: wp(P, R) + wp(-P, R).

    Only P is mirrored; R counts unoriented rings and stays fixed.
    """
    return wp(P, R) + wp(P.mirror(), R)


def complement_identity_check(P: ChiralityMatrix) -> bool:
    """Q(P) + Q(-P) must equal 2(n-2) I + 2 J for every valid P."""
    n = P.n
    q = q_matrix(P)
    qm = q_matrix(P.mirror())
    for i in range(n):
        for k in range(n):
            want = 2 * (n - 1) if i == k else 2
            if q.rows[i][k] + qm.rows[i][k] != want:
                return False
    return True


def decimal10(x: Fraction) -> str:
    """Render an exact rational to 10 decimals, rounding half away from zero.

    This is the comparison contract against published tables: equality of the
    rendered strings, no float tolerance anywhere.
    """
    sign = "-" if x < 0 else ""
    y = abs(Fraction(x)) * 10**10
    q, rem = divmod(y.numerator, y.denominator)
    if 2 * rem >= y.denominator:
        q += 1
    digits = str(q).rjust(11, "0")
    return f"{sign}{digits[:-10]}.{digits[-10:]}"
