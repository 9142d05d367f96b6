import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddunimodal.series import PochSpec, QSeries, RankSeries, expand_bilateral_factor, pochhammer

ints = st.integers(min_value=-10**12, max_value=10**12)


def qseries(order=8):
    return st.lists(ints, min_size=order + 1, max_size=order + 1).map(lambda c: QSeries(c, order))


def rankseries(order=6):
    row = st.dictionaries(st.integers(-3, 3), st.integers(-50, 50), max_size=3)
    return st.lists(row, min_size=order + 1, max_size=order + 1).map(lambda r: RankSeries(r, order))


class TestQSeriesExamples:
    def test_cancellation(self):
        assert QSeries([1, 1], 1) + QSeries([1, -1], 1) == QSeries([2, 0], 1)

    def test_small_sum(self):
        assert QSeries([0, 1, 2]) + QSeries([0, 0, 3]) == QSeries([0, 1, 5])

    def test_geometric_inverse(self):
        geo = QSeries([1] * 11, 10)
        assert QSeries([1, -1], 10) * geo == QSeries.one(10)

    def test_square(self):
        assert QSeries([1, 1], 2) ** 2 == QSeries([1, 2, 1])

    def test_mixed_orders_take_min(self):
        f = QSeries([1, 2, 3, 4], 3)
        g = QSeries([1, 1], 1)
        assert (f + g).order == 1
        assert (f * g).order == 1

    def test_invert_needs_unit(self):
        with pytest.raises(ValueError):
            QSeries([2, 1], 3).invert()

    def test_invert_euler(self):
        # 1/(q;q)_inf gives the partition numbers
        p = pochhammer(PochSpec(1, 0, 1, 1, None), 12, inverse=True)
        assert p.coeffs == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]

    def test_big_coefficients_stay_exact(self):
        f = QSeries([1, 10**30], 2)
        assert (f * f)[2] == 10**60


class TestRankSeriesExamples:
    def test_rank_cancellation(self):
        a = RankSeries.monomial(1, 1, 1, 4)
        b = RankSeries.monomial(1, -1, 1, 4)
        assert a * b == RankSeries.monomial(1, 0, 2, 4)

    def test_specialize_sums_ranks(self):
        f = RankSeries([{0: 1}, {1: 2, -1: 3}, {}], 2)
        assert f.specialize().coeffs == [1, 5, 0]

    def test_zeta_minus_one(self):
        f = RankSeries([{0: 1}, {1: 2, -2: 3}], 1)
        assert f.evaluate_zeta(-1).coeffs == [1, 1]

    def test_zero_rows_are_dropped(self):
        f = RankSeries([{0: 1, 2: 0}], 0)
        assert f[0] == {0: 1}


class TestRingAxioms:
    @given(qseries(), qseries(), qseries())
    @settings(max_examples=40)
    def test_qseries_ring(self, f, g, h):
        assert f + g == g + f
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == QSeries.zero(f.order)

    @given(rankseries(), rankseries(), rankseries())
    @settings(max_examples=30)
    def test_rankseries_ring(self, f, g, h):
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h

    @given(rankseries())
    @settings(max_examples=30)
    def test_specialize_is_homomorphism(self, f):
        g = f * f
        assert g.specialize() == f.specialize() * f.specialize()

    @given(st.lists(ints, min_size=9, max_size=9), st.sampled_from([1, -1]))
    @settings(max_examples=40)
    def test_invert_roundtrip(self, tail, unit):
        f = QSeries([unit] + tail[1:], 8)
        assert f * f.invert() == QSeries.one(8)

    @given(st.lists(st.integers(-99, 99), min_size=7, max_size=7),
           st.lists(st.integers(-99, 99), min_size=7, max_size=7))
    def test_mul_matches_numpy_convolution(self, a, b):
        want = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))[:7]
        assert (QSeries(a, 6) * QSeries(b, 6)).coeffs == [int(x) for x in want]


class TestPochhammer:
    def test_finite_product_by_hand(self):
        # (q;q)_3 = (1-q)(1-q^2)(1-q^3)
        got = pochhammer(PochSpec(1, 0, 1, 1, 3), 8)
        want = QSeries([1, -1], 8) * QSeries([1, 0, -1], 8) * QSeries([1, 0, 0, -1], 8)
        assert got == want

    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_recurrence(self, n):
        # (a;q)_{n+1} = (a;q)_n (1 - a q^n) with a = -zeta q
        order = 30
        lhs = pochhammer(PochSpec(-1, 1, 1, 2, n + 1), order)
        rhs = pochhammer(PochSpec(-1, 1, 1, 2, n), order).mul_binomial(1, 1, 1 + 2 * n)
        assert lhs == rhs

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_negative_length_reciprocal(self, n):
        # (a;q)_{-n} (a q^{-n};q)_n = 1
        order = 20
        a = 2 * n + 1
        neg = pochhammer(PochSpec(1, 0, a, 1, -n), order)
        pos = pochhammer(PochSpec(1, 0, a - n, 1, n), order)
        assert neg * pos == QSeries.one(order)

    def test_infinite_needs_positive_offset(self):
        with pytest.raises(ValueError):
            PochSpec(1, 0, 0, 1, None)

    def test_q_only_returns_qseries(self):
        assert isinstance(pochhammer(PochSpec(1, 0, 1, 2, None), 5), QSeries)
        assert isinstance(pochhammer(PochSpec(1, 1, 1, 2, None), 5), RankSeries)


class TestBilateral:
    def test_positive_exponent_is_geometric(self):
        f = expand_bilateral_factor(1, 1, 2, 8)
        want = RankSeries.from_terms([((-1) ** k, k, 2 * k) for k in range(5)], 8)
        assert f == want

    def test_negative_exponent_rewrite(self):
        # 1/(1 + zeta q^{-1}) = zeta^{-1} q / (1 + zeta^{-1} q)
        f = expand_bilateral_factor(1, 1, -1, 8)
        want = RankSeries.from_terms([((-1) ** k, -(k + 1), k + 1) for k in range(8)], 8)
        assert f == want

    @pytest.mark.parametrize("w", [-3, -1, 1, 2])
    def test_times_factor_is_one(self, w):
        f = expand_bilateral_factor(-1, 2, w, 12)
        if w > 0:
            assert f.mul_binomial(-1, 2, w) == RankSeries.one(12)
        else:
            # (1 - zeta^2 q^w) = -zeta^2 q^w (1 - zeta^{-2} q^{-w})
            back = f.mul_binomial(-1, -2, -w).shift(2, w)
            assert back == -RankSeries.one(12).truncate(12 + w)
