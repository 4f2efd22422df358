import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyltangle.seidel import (
    BadDiagonal,
    BadEntry,
    ChiralityMatrix,
    DiagonalSwitch,
    IndexOutOfRange,
    MatrixError,
    NonSymmetric,
    NotAPermutation,
    berkowitz,
    det_bareiss,
    from_upper_bits,
    upper_bits,
    validate,
)

K5_ROWS = [[0 if i == k else 1 for k in range(5)] for i in range(5)]


@st.composite
def seidel_matrices(draw, min_n=2, max_n=8):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return from_upper_bits(bits, n)


class TestValidate:
    def test_k5_valid(self):
        P = validate(K5_ROWS)
        assert P.n == 5

    def test_smallest(self):
        assert validate([[0, 1], [1, 0]]).n == 2

    def test_entry_outside_range(self):
        with pytest.raises(BadEntry) as exc:
            validate([[0, 2], [2, 0]])
        assert exc.value.index == (0, 1)

    def test_bad_diagonal(self):
        with pytest.raises(BadDiagonal):
            validate([[1, 1], [1, 0]])

    def test_non_symmetric(self):
        with pytest.raises(NonSymmetric):
            validate([[0, 1, 1], [1, 0, -1], [1, 1, 0]])

    def test_dimension_limits(self):
        with pytest.raises(MatrixError):
            validate([[0]])
        n = 33
        big = [[0 if i == k else 1 for k in range(n)] for i in range(n)]
        with pytest.raises(MatrixError):
            validate(big)

    def test_ragged(self):
        with pytest.raises(MatrixError):
            validate([[0, 1], [1]])


class TestFlipOrientation:
    def test_k5_first_line(self):
        flipped = validate(K5_ROWS).flip_orientation(0)
        assert all(flipped[0, k] == -1 for k in range(1, 5))
        assert all(flipped[k, 0] == -1 for k in range(1, 5))
        assert flipped[0, 0] == 0
        assert all(flipped[i, k] == 1 for i in range(1, 5) for k in range(1, 5) if i != k)

    @given(seidel_matrices(), st.data())
    def test_involution(self, P, data):
        i = data.draw(st.integers(0, P.n - 1))
        assert P.flip_orientation(i).flip_orientation(i) == P

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            validate(K5_ROWS).flip_orientation(5)

    def test_determinant_preserved(self, entries_by_name):
        P = entries_by_name["a89"].expected_P
        for i in range(P.n):
            assert P.flip_orientation(i).determinant() == P.determinant()


class TestPermute:
    def test_identity(self):
        P = validate(K5_ROWS)
        assert P.permute(list(range(5))) == P

    def test_swap_on_k5(self):
        P = validate(K5_ROWS)
        assert P.permute([1, 0, 2, 3, 4]) == P

    def test_char_poly_invariant(self, entries_by_name):
        P = entries_by_name["a89"].expected_P
        rng = random.Random(7)
        for _ in range(20):
            perm = list(range(P.n))
            rng.shuffle(perm)
            assert P.permute(perm).char_poly() == P.char_poly()

    def test_not_a_permutation(self):
        with pytest.raises(NotAPermutation):
            validate(K5_ROWS).permute([0, 0, 1, 2, 3])


class TestMirror:
    def test_k5(self):
        m = validate(K5_ROWS).mirror()
        assert all(m[i, k] == -1 for i in range(5) for k in range(5) if i != k)

    @given(seidel_matrices())
    def test_involution(self, P):
        assert P.mirror().mirror() == P

    @given(seidel_matrices())
    def test_determinant_sign(self, P):
        assert P.mirror().determinant() == (-1) ** P.n * P.determinant()

    def test_a89(self, entries_by_name):
        P = entries_by_name["a89"].expected_P
        assert P.determinant() == -18
        assert P.mirror().determinant() == 18


class TestSwitchEntry:
    def test_single_pair(self):
        P = validate(K5_ROWS).switch_entry(0, 1)
        assert P[0, 1] == P[1, 0] == -1
        assert sum(1 for i in range(5) for k in range(5) if P[i, k] == -1) == 2

    @given(seidel_matrices(), st.data())
    def test_involution(self, P, data):
        i = data.draw(st.integers(0, P.n - 1))
        k = data.draw(st.integers(0, P.n - 1).filter(lambda x: x != i))
        assert P.switch_entry(i, k).switch_entry(i, k) == P

    def test_diagonal_rejected(self):
        with pytest.raises(DiagonalSwitch):
            validate(K5_ROWS).switch_entry(2, 2)


def _charpoly_by_interpolation(rows):
    """Independent characteristic polynomial: exact determinants of xI - A at
    n+1 integer points, then Lagrange interpolation over the rationals."""
    from fractions import Fraction

    n = len(rows)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        m = [[(x if i == k else 0) - rows[i][k] for k in range(n)] for i in range(n)]
        ys.append(det_bareiss(m))
    coeffs = [Fraction(0)] * (n + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            denom *= xi - xj
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
        for k in range(len(basis)):
            coeffs[k] += Fraction(yi) * basis[k] / denom
    out = [c for c in reversed(coeffs)]
    assert all(c.denominator == 1 for c in out)
    return tuple(int(c) for c in reversed(out))


class TestExactAlgebra:
    def test_k5_determinant(self):
        assert validate(K5_ROWS).determinant() == 4

    def test_a89_determinant(self, entries_by_name):
        assert entries_by_name["a89"].expected_P.determinant() == -18

    def test_prototype18_determinant(self, prototype18):
        assert prototype18.determinant() == -(17**9) == -118587876497

    @given(seidel_matrices(max_n=7))
    @settings(max_examples=60)
    def test_berkowitz_against_interpolation(self, P):
        assert berkowitz(P.to_lists()) == _charpoly_by_interpolation(P.to_lists())

    @given(seidel_matrices())
    def test_charpoly_constant_term_is_det(self, P):
        cp = P.char_poly()
        assert cp.coeffs[0] == 1
        assert cp.det() == P.determinant()

    def test_prototype_charpolys(self, prototype18, prototype14):
        from cyltangle.enumeration import conference_charpoly

        assert prototype18.char_poly() == conference_charpoly(9, 17)
        assert prototype14.char_poly() == conference_charpoly(7, 13)

    def test_a59_factored_charpoly(self, entries_by_name):
        # (x + 2) * (x^3 - x^2 - 9x + 1)^2, compared monic (the printed form
        # carries an overall minus; sign convention is unresolved there)
        def polymul(a, b):
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return out

        cubic = [1, -1, -9, 1]
        expected = tuple(polymul([1, 2], polymul(cubic, cubic)))
        assert entries_by_name["a59"].expected_P.char_poly().coeffs == expected


class TestEePairs:
    def test_2x2_vacuous(self):
        assert validate([[0, 1], [1, 0]]).ee_pairs() == [(0, 1)]

    def test_a89_empty(self, entries_by_name):
        assert entries_by_name["a89"].expected_P.ee_pairs() == []

    def test_brute_force_agreement(self, entries_by_name):
        # re-derive: two rows equal (or negated) outside their own positions
        P = entries_by_name["b14"].expected_P
        n = P.n
        expect = []
        for i in range(n):
            for k in range(i + 1, n):
                rest = [m for m in range(n) if m not in (i, k)]
                if all(P[i, m] == P[k, m] for m in rest) or all(
                    P[i, m] == -P[k, m] for m in rest
                ):
                    expect.append((i, k))
        assert P.ee_pairs() == expect == [(0, 2)]

    @given(seidel_matrices(min_n=3, max_n=8), st.data())
    def test_ee_forces_unit_eigenvalue(self, P, data):
        # plant an EE pair, then +-1 must be a root of the char poly
        i = data.draw(st.integers(0, P.n - 1))
        k = data.draw(st.integers(0, P.n - 1).filter(lambda x: x != i))
        rows = P.to_lists()
        for m in range(P.n):
            if m not in (i, k):
                rows[k][m] = rows[i][m]
                rows[m][k] = rows[m][i]
        planted = validate(rows)
        assert planted.ee_pairs()
        cp = planted.char_poly()
        assert cp(1) == 0 or cp(-1) == 0


class TestSimilarityInvariance:
    def test_random_transformation_sequences(self, catalog_entries):
        rng = random.Random(123)
        mats = [e.expected_P for e in catalog_entries if e.expected_P is not None]
        for _ in range(100):
            P = rng.choice(mats)
            det, cp = P.determinant(), P.char_poly()
            Q = P
            for _ in range(rng.randint(1, 6)):
                if rng.random() < 0.5:
                    Q = Q.flip_orientation(rng.randrange(Q.n))
                else:
                    perm = list(range(Q.n))
                    rng.shuffle(perm)
                    Q = Q.permute(perm)
            assert Q.determinant() == det
            assert Q.char_poly() == cp


class TestBitPacking:
    @given(seidel_matrices())
    def test_round_trip(self, P):
        assert from_upper_bits(upper_bits(P), P.n) == P
