"""Riordan pairs: entries, group laws, A-sequence, row polynomials."""

import random
from fractions import Fraction

import pytest

from rioplex.errors import TruncationExceededError, ZeroConstantTermError
from rioplex.fps import PowerSeries
from rioplex.riordan import FiniteMatrix, RiordanPair

F = Fraction


def f22_pair(trunc=12):
    # alpha = 1/(1-x), omega = (1-x)/2
    return RiordanPair(
        PowerSeries.geometric(trunc),
        PowerSeries.of([F(1, 2), F(-1, 2)], trunc),
    )


def random_pair(rng, trunc=12):
    def coeffs(nonzero_head):
        head = F(rng.choice([c for c in range(-4, 5) if c != 0]), rng.randint(1, 3))
        tail = [
            F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(trunc - 1)
        ]
        return PowerSeries.of([head] + tail)

    return RiordanPair(coeffs(True), coeffs(True))


class TestEntry:
    def test_pascal(self):
        p = RiordanPair.pascal(8)
        assert p.entry(4, 2) == 6
        assert p.entry(0, 1) == 0

    def test_f22_entry(self):
        assert f22_pair().entry(2, 1) == 12

    def test_row_beyond_truncation(self):
        with pytest.raises(TruncationExceededError):
            RiordanPair.pascal(4).entry(4, 0)

    def test_invalid_series_rejected(self):
        with pytest.raises(ZeroConstantTermError):
            RiordanPair(PowerSeries.x(4), PowerSeries.one(4))


class TestFinite:
    def test_pascal_3x3(self):
        m = RiordanPair.pascal(6).finite(2)
        assert m == FiniteMatrix.from_rows([[1], [1, 1], [1, 2, 1]])

    def test_identity_pair(self):
        assert RiordanPair.identity(6).finite(2).is_identity()

    def test_f22_table(self):
        m = f22_pair().finite(4)
        assert m == FiniteMatrix.from_rows(
            [
                [2],
                [4, 4],
                [6, 12, 8],
                [8, 24, 32, 16],
                [10, 40, 80, 80, 32],
            ]
        )

    def test_diagonal_geometric(self):
        pair = f22_pair()
        diag = pair.finite(5).diagonal()
        a0 = pair.alpha.coeffs[0]
        w0 = pair.omega.coeffs[0]
        for k, d in enumerate(diag):
            assert d == a0 / w0 * (1 / w0) ** k


class TestMultiply:
    def test_right_identity(self):
        r = f22_pair(10)
        prod = r @ RiordanPair.identity(10)
        assert prod.alpha.agrees_with(r.alpha)
        assert prod.omega.agrees_with(r.omega)

    def test_pascal_squared(self):
        p = RiordanPair.pascal(9)
        sq = p @ p
        m = sq.finite(7)
        direct = p.finite(7) @ p.finite(7)
        assert m == direct
        for n in range(8):
            for k in range(n + 1):
                assert m.entry(n, k) == __import__("math").comb(n, k) * 2 ** (n - k)

    def test_product_matches_matrix_product_random(self):
        rng = random.Random(20240601)
        for _ in range(8):
            r, s = random_pair(rng, 9), random_pair(rng, 9)
            prod = r @ s
            assert prod.finite(8) == r.finite(8) @ s.finite(8)


class TestInverse:
    def test_identity_self_inverse(self):
        inv = RiordanPair.identity(8).inverse()
        assert inv.finite(6).is_identity()

    def test_pascal_inverse(self):
        p = RiordanPair.pascal(8)
        inv = p.inverse()
        assert (p.finite(5) @ inv.finite(5)).is_identity()
        # signed Pascal: alpha 1, omega 1+x
        assert inv.alpha.agrees_with(PowerSeries.one(7))
        assert inv.omega.agrees_with(PowerSeries.of([1, 1], 7))

    def test_inverse_random(self):
        rng = random.Random(77)
        for _ in range(6):
            r = random_pair(rng, 9)
            assert (r @ r.inverse()).finite(7).is_identity()


class TestFtrm:
    def test_pascal_on_geometric(self):
        out = RiordanPair.pascal(8).ftrm(PowerSeries.geometric(8))
        assert out == PowerSeries.of([2**k for k in range(8)])

    def test_zero_vector(self):
        out = f22_pair().ftrm(PowerSeries.zero(12))
        assert out.is_zero()

    def test_matches_matrix_vector(self):
        rng = random.Random(1234)
        for _ in range(6):
            r = random_pair(rng, 9)
            zeta = PowerSeries.of([F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(9)])
            out = r.ftrm(zeta)
            m = r.finite(8)
            assert m.mat_vec(zeta.coeffs[:9]) == out.coeffs[:9]


class TestASequence:
    def test_pascal(self):
        a = RiordanPair.pascal(8).a_sequence()
        assert a.agrees_with(PowerSeries.of([1, 1], 7))

    def test_identity(self):
        a = RiordanPair.identity(8).a_sequence()
        assert a.agrees_with(PowerSeries.one(7))

    @staticmethod
    def assert_a_recurrence(pair, n):
        a = pair.a_sequence()
        m = pair.finite(n)
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                acc = Fraction(0)
                for k in range(i - j + 1):
                    acc += a.coeffs[k] * m.entry(i - 1, j - 1 + k)
                assert acc == m.entry(i, j)

    def test_recurrence_on_pascal(self):
        self.assert_a_recurrence(RiordanPair.pascal(8), 5)

    def test_recurrence_random(self):
        rng = random.Random(5150)
        for _ in range(5):
            self.assert_a_recurrence(random_pair(rng, 9), 7)


class TestRowPolynomials:
    def test_pascal_rows(self):
        rows = RiordanPair.pascal(8).row_polynomials(5)
        for n, row in enumerate(rows):
            assert row == PowerSeries.binomial(n, n + 1).coeffs

    def test_identity_rows(self):
        rows = RiordanPair.identity(8).row_polynomials(4)
        for n, row in enumerate(rows):
            assert row == tuple(F(1 if k == n else 0) for k in range(n + 1))

    def test_recurrence_random(self):
        rng = random.Random(999)
        for _ in range(4):
            random_pair(rng, 9).row_polynomials(8)


class TestFiniteMatrix:
    def test_rejects_upper_support(self):
        with pytest.raises(ValueError):
            FiniteMatrix(((F(1), F(2)), (F(0), F(1))))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            FiniteMatrix.from_rows([[1, 2, 3]])

    def test_json_and_csv(self):
        m = FiniteMatrix.from_rows([[1], [F(1, 2), 2]])
        assert m.to_json_obj() == {"order": 2, "rows": [["1", "0"], ["1/2", "2"]]}
        assert m.to_csv_text() == "1,0\n1/2,2\n"


def test_pair_json_roundtrip():
    r = f22_pair(6)
    obj = r.to_json_obj()
    back = RiordanPair.from_json_obj(obj)
    assert back.alpha == r.alpha
    assert back.omega == r.omega
    assert back.trunc == r.trunc
