"""Vectorized helpers shared by the forbidden-submatrix tables and the
class enumeration.

Matrices are packed as upper-triangle sign bitmasks (bit c set = +1 for the
c-th pair (i, j), i < j, row-major).  Characteristic polynomials are computed
modulo two fixed 31-bit primes with a batched Faddeev-LeVerrier recurrence;
for n <= 19 the coefficients of det(xI - P) of a Seidel matrix are bounded
well below the product of the primes, so equality of the two residue vectors
is equivalent to equality of the exact polynomials (CRT), making the residues
a collision-free dedup key.
"""
from __future__ import annotations

import numpy as np

PRIMES = (2147483647, 2147483629)


def pair_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def mats_from_bits(keys: np.ndarray, n: int) -> np.ndarray:
    """(B, n, n) int64 sign matrices from packed upper-triangle bits."""
    B = len(keys)
    M = np.zeros((B, n, n), dtype=np.int64)
    for c, (i, j) in enumerate(pair_positions(n)):
        v = ((keys >> c) & 1) * 2 - 1
        M[:, i, j] = v
        M[:, j, i] = v
    return M


def charpoly_mod_batch(mats: np.ndarray, p: int) -> np.ndarray:
    """Coefficients c_1..c_n of det(xI - A) mod p for a batch of int matrices.

    Faddeev-LeVerrier: M_1 = A, c_k = -tr(M_k)/k, M_{k+1} = A(M_k + c_k I).
    Division by k becomes multiplication by the modular inverse.  Entries of
    A are +-1 and intermediates stay below 2^37, safely inside int64.
    """
    B, n, _ = mats.shape
    A = mats.astype(np.int64)
    eye = np.eye(n, dtype=np.int64)
    M = np.broadcast_to(eye, (B, n, n)).copy()
    c = np.zeros(B, dtype=np.int64)
    out = np.zeros((B, n), dtype=np.int64)
    for k in range(1, n + 1):
        if k > 1:
            M = (M + c[:, None, None] * eye) % p
        M = np.matmul(A, M) % p
        tr = np.trace(M, axis1=1, axis2=2) % p
        c = (-tr * pow(k, p - 2, p)) % p
        out[:, k - 1] = c
    return out


def dedup_keys(mats: np.ndarray) -> np.ndarray:
    """(B, 2n) residues of the characteristic polynomial mod both primes."""
    return np.concatenate(
        [charpoly_mod_batch(mats, p) for p in PRIMES], axis=1
    )


def det_mod_signed(mats: np.ndarray, p: int = PRIMES[0]) -> np.ndarray:
    """Exact determinants of small-determinant integer matrices via one prime.

    Valid whenever |det| < p/2; the caller guarantees that (Hadamard bound
    for the matrix sizes used here).
    """
    B, n, _ = mats.shape
    cn = charpoly_mod_batch(mats, p)[:, -1]
    d = cn if n % 2 == 0 else (-cn) % p
    return np.where(d > p // 2, d - p, d)
