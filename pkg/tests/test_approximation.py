import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peaking.approximation import (
    FULLRANK,
    PINV,
    GammaSpec,
    approx_error,
    approx_error_fullrank,
    approx_error_pinv,
    approx_error_semisup,
    approx_terms,
    learning_curve_approx,
)
from peaking.exceptions import DomainError, RegimeError
from peaking.numerics import normal_cdf

# Oracle values from 40-digit mpmath / exact rational arithmetic.
PINV_N2_P50_D465 = 0.4784110008079635984  # T_mu = 73.76268932824604
FULLRANK_N2_P2_D2 = 0.2818514308253865144  # Phi(-1/sqrt(3))


def grow(N, p):
    return 2 * N / p


class TestPinv:
    def test_single_object_per_class_is_chance(self):
        assert approx_error_pinv(1, 50, 4.0) == 0.5

    def test_worked_value(self):
        terms = approx_terms(2, 2, 50, 4.65)
        assert terms.t_mu == pytest.approx(73.76268932824604, rel=1e-13)
        assert terms.t_r == pytest.approx(0.2, rel=1e-15)
        assert abs(approx_error_pinv(2, 50, 4.65) - PINV_N2_P50_D465) <= 1e-12

    def test_decreasing_in_delta(self):
        deltas = np.linspace(0.5, 8, 40)
        errs = [approx_error_pinv(5, 50, d, 0.3) for d in deltas]
        assert np.all(np.diff(errs) < 0)

    def test_gamma_increases_error(self):
        for N in range(2, 25):
            base = approx_error_pinv(N, 50, 4.65)
            assert approx_error_pinv(N, 50, 4.65, 0.5) > base
            assert approx_error_pinv(N, 50, 4.65, GammaSpec(grow)) > base

    def test_invalid(self):
        with pytest.raises(DomainError):
            approx_error_pinv(0, 50, 4.0)
        with pytest.raises(DomainError):
            approx_error_pinv(3, 50, -1.0)
        with pytest.raises(DomainError):
            approx_error_pinv(3, 50, 1.0, gamma=-0.1)


class TestFullRank:
    def test_worked_value(self):
        assert abs(approx_error_fullrank(2, 2, 2.0) - FULLRANK_N2_P2_D2) <= 1e-10

    @pytest.mark.parametrize("p, delta", [(2, 2.0), (50, 4.0), (10, 1.0)])
    def test_large_sample_limit_is_bayes(self, p, delta):
        bayes = normal_cdf(-delta / 2)
        assert abs(approx_error_fullrank(10**6 * p, p, delta) / bayes - 1) < 0.01

    def test_just_past_the_pole(self):
        p, delta = 50, 4.0
        N = (p + 1) / 2
        terms = approx_terms(N, N, p, delta)
        assert terms.t_sigma == pytest.approx(1 + p)
        assert approx_error_fullrank(N, p, delta) > approx_error_fullrank(N + 5, p, delta)

    def test_strictly_decreasing(self):
        for p in (1, 10, 50):
            Ns = [N for N in range(1, 400) if 2 * N > p + 1]
            errs = [approx_error_fullrank(N, p, 3.0) for N in Ns]
            assert np.all(np.diff(errs) < 0)

    @pytest.mark.parametrize("N", [10, 25, 3])
    def test_regime_error(self, N):
        with pytest.raises(RegimeError):
            approx_error_fullrank(N, 50, 4.0)


class TestSemiSupervised:
    @pytest.mark.parametrize("N", [2, 5, 24, 26, 40, 300])
    @pytest.mark.parametrize("gamma", [0.0, 0.7, GammaSpec(grow)])
    def test_reduces_to_supervised(self, N, gamma):
        assert approx_error_semisup(N, N, 50, 4.65, gamma) == approx_error(N, 50, 4.65, gamma)

    @pytest.mark.parametrize("gamma", [0.0, 0.7, GammaSpec(grow)])
    def test_stays_above_and_falls_slower_after_peak(self, gamma):
        p, delta, NL = 50, 4.65, 5
        for lo, hi in ((NL, 24), (26, 150)):
            Ns = np.arange(lo, hi + 1)
            sup = np.array([approx_error(N, p, delta, gamma) for N in Ns])
            semi = np.array([approx_error_semisup(NL, N, p, delta, gamma) for N in Ns])
            assert np.all(semi[1:] > sup[1:])
        # Just past the peak the gap widens step by step.
        Ns = np.arange(26, 37)
        sup = np.array([approx_error(N, p, delta, gamma) for N in Ns])
        semi = np.array([approx_error_semisup(NL, N, p, delta, gamma) for N in Ns])
        assert np.all(np.diff(semi - sup) > 0)

    def test_unlimited_unlabeled_limit(self):
        p, delta, NL = 50, 4.65, 5
        limit = normal_cdf(-0.5 * delta / math.sqrt(1 + 2 * p / (delta**2 * NL)))
        assert approx_error_semisup(NL, 10**9, p, delta) == pytest.approx(limit, rel=1e-6)
        assert limit > normal_cdf(-delta / 2)

    def test_invalid(self):
        with pytest.raises(DomainError):
            approx_error_semisup(1, 10, 50, 4.0)
        with pytest.raises(DomainError):
            approx_error_semisup(10, 5, 50, 4.0)
        with pytest.raises(RegimeError):
            approx_error_semisup(5, 25, 50, 4.0)


@settings(max_examples=200, deadline=None)
@given(
    N=st.integers(1, 500),
    p=st.integers(1, 300),
    delta=st.floats(0.05, 10),
    gamma=st.floats(0, 5),
)
def test_outputs_in_half_open_unit_half(N, p, delta, gamma):
    if 2 * N == p:
        return
    e = approx_error(N, p, delta, gamma)
    assert 0 < e <= 0.5


class TestCurve:
    def test_regime_flags_and_skipped_boundary(self):
        with pytest.warns(UserWarning, match="2N = p"):
            pts = learning_curve_approx(range(20, 31), 50, 4.0)
        assert [pt.n_total_per_class for pt in pts] == [20, 21, 22, 23, 24, 26, 27, 28, 29, 30]
        assert [pt.regime for pt in pts] == [PINV] * 5 + [FULLRANK] * 5

    @pytest.mark.parametrize("gamma", [0.0, GammaSpec(grow)])
    def test_single_peak_just_past_n_equals_p(self, gamma):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pts = learning_curve_approx(range(1, 101), 50, 4.65, gamma)
        e = np.array([pt.error for pt in pts])
        N = [pt.n_total_per_class for pt in pts]
        peaks = [N[i] for i in range(1, len(e) - 1) if e[i] > e[i - 1] and e[i] > e[i + 1]]
        assert peaks == [26]

    def test_semi_supervised_grid(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pts = learning_curve_approx(range(5, 41), 50, 4.65, n_labeled=5)
        assert len(pts) == 35
        assert all(pt.n_labeled_per_class == 5 for pt in pts)
        with pytest.raises(DomainError):
            learning_curve_approx([4], 50, 4.65, n_labeled=5)


def test_gamma_spec():
    assert GammaSpec()(3, 10) == 0.0
    assert GammaSpec(lambda N, p: N / p)(5, 10) == 0.5
    assert "no eigenvalue" in GammaSpec().describe()
    with pytest.raises(DomainError):
        GammaSpec(float("nan"))(1, 1)
