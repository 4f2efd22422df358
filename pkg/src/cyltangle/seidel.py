"""Chirality (Seidel) matrices and their exact integer linear algebra.

A chirality matrix is a symmetric n x n integer matrix with zero diagonal and
+-1 off-diagonal entries.  Reversing the orientation of line i negates row i
and column i; relabelling lines permutes rows and columns simultaneously.
Both operations are similarity transformations, so determinant and
characteristic polynomial are class invariants and everything here is computed
exactly over the integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

MAX_DIMENSION = 32


class MatrixError(ValueError):
    """Base for chirality-matrix validation and operation errors."""


class NonSymmetric(MatrixError):
    def __init__(self, i: int, k: int):
        super().__init__(f"entry ({i},{k}) != entry ({k},{i})")
        self.index = (i, k)


class BadDiagonal(MatrixError):
    def __init__(self, i: int):
        super().__init__(f"diagonal entry ({i},{i}) must be 0")
        self.index = i


class BadEntry(MatrixError):
    def __init__(self, i: int, k: int):
        super().__init__(f"entry ({i},{k}) must be +1 or -1")
        self.index = (i, k)


class IndexOutOfRange(MatrixError):
    pass


class NotAPermutation(MatrixError):
    pass


class DiagonalSwitch(MatrixError):
    pass


@dataclass(frozen=True)
class CharPoly:
    """Monic integer characteristic polynomial det(xI - P).

    coeffs[k] multiplies x^(n-k); coeffs[0] == 1 and
    coeffs[n] == (-1)^n * det(P).
    """

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def det(self) -> int:
        n = self.degree
        return self.coeffs[-1] if n % 2 == 0 else -self.coeffs[-1]


@dataclass(frozen=True)
class ChiralityMatrix:
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ik: tuple[int, int]) -> int:
        i, k = ik
        return self.rows[i][k]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    # similarity transformations -------------------------------------------

    def flip_orientation(self, i: int) -> "ChiralityMatrix":
        """Negate row i and column i (reverse the orientation of line i)."""
        n = self.n
        if not 0 <= i < n:
            raise IndexOutOfRange(f"index {i} out of range for n={n}")
        rows = [
            tuple(-v if (r == i) != (c == i) else v for c, v in enumerate(row))
            for r, row in enumerate(self.rows)
        ]
        return ChiralityMatrix(tuple(rows))

    def permute(self, perm: Sequence[int]) -> "ChiralityMatrix":
        """Relabel lines: entry'(i,k) = entry(perm[i], perm[k])."""
        n = self.n
        if sorted(perm) != list(range(n)):
            raise NotAPermutation(f"{perm!r} is not a permutation of 0..{n - 1}")
        return ChiralityMatrix(
            tuple(tuple(self.rows[perm[i]][perm[k]] for k in range(n)) for i in range(n))
        )

    def mirror(self) -> "ChiralityMatrix":
        """Negate every off-diagonal entry (spatial mirror image)."""
        return ChiralityMatrix(tuple(tuple(-v for v in row) for row in self.rows))

    def switch_entry(self, i: int, k: int) -> "ChiralityMatrix":
        """Negate the single symmetric pair of entries (i,k) and (k,i)."""
        n = self.n
        if not (0 <= i < n and 0 <= k < n):
            raise IndexOutOfRange(f"indices ({i},{k}) out of range for n={n}")
        if i == k:
            raise DiagonalSwitch("cannot switch a diagonal entry")
        rows = [list(r) for r in self.rows]
        rows[i][k] = -rows[i][k]
        rows[k][i] = -rows[k][i]
        return ChiralityMatrix(tuple(tuple(r) for r in rows))

    # exact linear algebra ---------------------------------------------------

    def determinant(self) -> int:
        return det_bareiss(self.to_lists())

    def char_poly(self) -> CharPoly:
        return CharPoly(berkowitz(self.to_lists()))

    def ee_pairs(self) -> list[tuple[int, int]]:
        """Pairs of lines in equal environment.

        Lines i and k are in equal environment when their rows agree at every
        position outside {i, k}, either exactly or after negating one row.
        The diagonal zeros and the mutual entry P[i][k] are excluded: flipping
        one line's orientation changes the mutual entry for exactly one of
        the two rows, so it carries no environment information.
        """
        n = self.n
        out = []
        for i, k in combinations(range(n), 2):
            rest = [m for m in range(n) if m != i and m != k]
            same = all(self.rows[i][m] == self.rows[k][m] for m in rest)
            opposite = all(self.rows[i][m] == -self.rows[k][m] for m in rest)
            if same or opposite:
                out.append((i, k))
        return out


def validate(raw: Iterable[Iterable[int]]) -> ChiralityMatrix:
    """Validate a square integer matrix as a chirality matrix."""
    rows = tuple(tuple(int(v) for v in row) for row in raw)
    n = len(rows)
    if not 2 <= n <= MAX_DIMENSION:
        raise MatrixError(f"dimension {n} outside supported range 2..{MAX_DIMENSION}")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MatrixError(f"row {i} has length {len(row)}, expected {n}")
    for i in range(n):
        if rows[i][i] != 0:
            raise BadDiagonal(i)
        for k in range(i + 1, n):
            if rows[i][k] not in (-1, 1):
                raise BadEntry(i, k)
            if rows[i][k] != rows[k][i]:
                raise NonSymmetric(i, k)
    return ChiralityMatrix(rows)


def from_upper_bits(bits: int, n: int) -> ChiralityMatrix:
    """Build an n x n chirality matrix from packed upper-triangle sign bits.

    Bit c (row-major over pairs i<j) set means entry +1, clear means -1.
    """
    rows = [[0] * n for _ in range(n)]
    c = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = 1 if (bits >> c) & 1 else -1
            rows[i][j] = rows[j][i] = s
            c += 1
    return ChiralityMatrix(tuple(tuple(r) for r in rows))


def upper_bits(P: ChiralityMatrix, indices: Sequence[int] | None = None) -> int:
    """Packed upper-triangle sign bits of P, optionally of a principal submatrix."""
    idx = list(indices) if indices is not None else list(range(P.n))
    x = 0
    c = 0
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if P.rows[idx[a]][idx[b]] > 0:
                x |= 1 << c
            c += 1
    return x


def det_bareiss(mat: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(c + 1, n):
            arc = a[r][c]
            acc = a[c][c]
            for k in range(c + 1, n):
                a[r][k] = (a[r][k] * acc - arc * a[c][k]) // prev
            a[r][c] = 0
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def berkowitz(mat: list[list[int]]) -> tuple[int, ...]:
    """Division-free characteristic polynomial of an integer matrix.

    Berkowitz's algorithm: grow one leading principal submatrix at a time,
    multiplying the current coefficient vector by a Toeplitz matrix whose
    column is built from -A[k][k] and the Krylov products -R A^m C of the
    bordering row R and column C.  All arithmetic stays in Python ints, so
    there is no overflow at any dimension.
    """
    n = len(mat)
    poly = [1, -mat[0][0]]
    for k in range(1, n):
        R = [mat[k][j] for j in range(k)]
        C = [mat[j][k] for j in range(k)]
        sub = [row[:k] for row in mat[:k]]
        toep = [1, -mat[k][k]]
        v = C[:]
        for m in range(2, k + 2):
            toep.append(-sum(R[i] * v[i] for i in range(k)))
            if m < k + 1:
                v = [sum(sub[i][j] * v[j] for j in range(k)) for i in range(k)]
        out = [0] * (k + 2)
        for i, pi in enumerate(poly):
            if pi:
                for m, tm in enumerate(toep):
                    if tm and i + m <= k + 1:
                        out[i + m] += pi * tm
        poly = out
    return tuple(poly)
