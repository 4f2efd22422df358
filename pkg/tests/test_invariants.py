from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyltangle.invariants import (
    DimensionMismatch,
    RingMatrix,
    RowSumNotDivisibleBy3,
    SingularIMinusR,
    complement_identity_check,
    decimal10,
    q_matrix,
    ring_vector,
    validate_ring,
    wp,
    wp_ring,
)
from cyltangle.seidel import from_upper_bits, validate

from test_seidel import seidel_matrices

Q_A89 = [
    [6, 4, 0, 2, 0, 2, 4],
    [4, 6, 2, 0, -2, -2, 2],
    [0, 2, 6, -2, 0, 2, 2],
    [2, 0, -2, 6, -2, 2, 4],
    [0, -2, 0, -2, 6, 0, 0],
    [2, -2, 2, 2, 0, 6, 0],
    [4, 2, 2, 4, 0, 0, 6],
]
Q_A89_MIRROR = [
    [6, -2, 2, 0, 2, 0, -2],
    [-2, 6, 0, 2, 4, 4, 0],
    [2, 0, 6, 4, 2, 0, 0],
    [0, 2, 4, 6, 4, 0, -2],
    [2, 4, 2, 4, 6, 2, 2],
    [0, 4, 0, 0, 2, 6, 2],
    [-2, 0, 0, -2, 2, 2, 6],
]

# ring matrix shared by the two 8-line configurations whose combined
# invariant is exactly 202/5
RING_8 = [
    [0, 3, 3, 7, 5, 3, 7, 5],
    [5, 0, 7, 5, 7, 5, 5, 5],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 5, 5, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [2, 2, 4, 2, 2, 8, 4, 0],
]


def _q_by_row_switching(P):
    """Literal procedure: normalize each row to all +1s by orientation flips,
    then take column sums of the switched matrix."""
    n = P.n
    rows = []
    for i in range(n):
        switched = P
        for j in range(n):
            if P[i, j] == -1:
                switched = switched.flip_orientation(j)
        rows.append(tuple(sum(switched[a, k] for a in range(n)) for k in range(n)))
    return rows


class TestQMatrix:
    def test_a89_reproduces_published_matrix(self, entries_by_name):
        P = entries_by_name["a89"].expected_P
        assert [list(r) for r in q_matrix(P).rows] == Q_A89

    def test_a89_mirror(self, entries_by_name):
        P = entries_by_name["a89"].expected_P
        assert [list(r) for r in q_matrix(P.mirror()).rows] == Q_A89_MIRROR

    def test_smallest(self):
        assert q_matrix(validate([[0, 1], [1, 0]])).rows == ((1, 1), (1, 1))

    @given(seidel_matrices(max_n=8))
    @settings(max_examples=80)
    def test_closed_form_equals_procedure(self, P):
        assert q_matrix(P).rows == tuple(_q_by_row_switching(P))

    @given(seidel_matrices(max_n=10))
    def test_complement_identity(self, P):
        assert complement_identity_check(P)

    @given(seidel_matrices(max_n=8))
    def test_symmetric_with_parity(self, P):
        q = q_matrix(P).rows
        n = P.n
        for i in range(n):
            assert q[i][i] == n - 1
            for k in range(n):
                assert q[i][k] == q[k][i]
                assert (q[i][k] - (n - 1)) % 2 == 0


class TestRingVector:
    def test_a89(self, entries_by_name):
        R = entries_by_name["a89"].expected_R
        assert ring_vector(R).counts == (4, 8, 0, 0, 4, 4, 0)

    def test_zero_matrix(self):
        R = validate_ring([[0] * 5 for _ in range(5)])
        assert ring_vector(R).counts == (0,) * 5

    def test_shared_8knot_matrix(self):
        assert ring_vector(validate_ring(RING_8)).counts == (11, 13, 0, 0, 5, 0, 0, 8)

    def test_indivisible_row_rejected(self):
        R = RingMatrix(((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
        with pytest.raises(RowSumNotDivisibleBy3) as exc:
            ring_vector(R)
        assert exc.value.row == 0

    def test_validate_bounds(self):
        with pytest.raises(ValueError):
            validate_ring([[0, -1], [1, 0]])
        with pytest.raises(ValueError):
            validate_ring([[5, 0], [0, 0]])


class TestWp:
    def test_a89_values(self, entries_by_name):
        e = entries_by_name["a89"]
        P, R = e.expected_P, e.expected_R
        assert wp(P, R) == Fraction(577, 41)
        assert decimal10(wp(P, R)) == "14.0731707317"
        assert decimal10(wp(P.mirror(), R)) == "7.8048780488"

    def test_zero_ring_matrix_gives_trace(self, entries_by_name):
        P = entries_by_name["a89"].expected_P
        R = validate_ring([[0] * 7 for _ in range(7)])
        assert wp(P, R) == 42  # n(n-1)

    def test_wp_ring_zero_r(self, entries_by_name):
        P = entries_by_name["a89"].expected_P
        R = validate_ring([[0] * 7 for _ in range(7)])
        assert wp_ring(P, R) == 2 * 7 * 6

    def test_wp_ring_a89(self, entries_by_name):
        e = entries_by_name["a89"]
        assert decimal10(wp_ring(e.expected_P, e.expected_R)) == "21.8780487805"

    def test_wp_ring_depends_only_on_ring_matrix(self):
        # complement identity makes wp + mirror wp a function of R alone
        R = validate_ring(RING_8)
        seen = set()
        for bits in (0, 12345, 99999):
            P = from_upper_bits(bits, 8)
            seen.add(wp_ring(P, R))
        assert seen == {Fraction(202, 5)}

    def test_permutation_invariance(self, entries_by_name):
        import random

        e = entries_by_name["a89"]
        P, R = e.expected_P, e.expected_R
        base = wp(P, R)
        rng = random.Random(5)
        for _ in range(10):
            perm = list(range(7))
            rng.shuffle(perm)
            P2 = P.permute(perm)
            R2 = validate_ring(
                [[R.rows[perm[i]][perm[k]] for k in range(7)] for i in range(7)]
            )
            assert wp(P2, R2) == base

    def test_singular_ring_matrix(self):
        P = from_upper_bits(0, 4)
        R = validate_ring(
            [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
        )
        with pytest.raises(SingularIMinusR):
            wp(P, R)

    def test_dimension_mismatch(self):
        P = from_upper_bits(0, 4)
        R = validate_ring([[0] * 5 for _ in range(5)])
        with pytest.raises(DimensionMismatch):
            wp(P, R)


class TestDecimal10:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (Fraction(577, 41), "14.0731707317"),
            (Fraction(320, 41), "7.8048780488"),
            (Fraction(15), "15.0000000000"),
            (Fraction(-1), "-1.0000000000"),
            (Fraction(1, 2 * 10**10), "0.0000000001"),  # half rounds away from zero
            (Fraction(-1, 2 * 10**10), "-0.0000000001"),
            (Fraction(1, 3 * 10**10), "0.0000000000"),
            (Fraction(202, 5), "40.4000000000"),
        ],
    )
    def test_rendering(self, value, expected):
        assert decimal10(value) == expected

    @given(st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**9))
    def test_matches_decimal_module(self, x):
        import decimal

        with decimal.localcontext() as ctx:
            ctx.prec = 60
            d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
            want = str(
                d.quantize(
                    decimal.Decimal("1.0000000000"), rounding=decimal.ROUND_HALF_UP
                )
            )
        assert decimal10(x) == want
