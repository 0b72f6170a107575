import math

import mpmath
import numpy as np
import pytest

from isexplore.errors import TooFewPointsError, ZeroVarianceError
from isexplore.stats import (
    FitModel,
    fit_quality_relation,
    regularized_incomplete_beta,
    t_two_sided_p_value,
)

mpmath.mp.dps = 50


def mpmath_two_sided_p(t, df):
    x = mpmath.mpf(df) / (df + mpmath.mpf(t) ** 2)
    return float(mpmath.betainc(mpmath.mpf(df) / 2, mpmath.mpf("0.5"), 0, x, regularized=True))


class TestIncompleteBeta:
    def test_bounds(self):
        assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
        assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0

    def test_symmetry_identity(self):
        # I_x(a, b) = 1 - I_{1-x}(b, a)
        for a, b, x in [(0.5, 0.5, 0.3), (2.0, 5.0, 0.7), (10.0, 1.5, 0.42)]:
            lhs = regularized_incomplete_beta(a, b, x)
            rhs = 1.0 - regularized_incomplete_beta(b, a, 1.0 - x)
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_against_mpmath(self):
        for a, b, x in [(0.5, 0.5, 0.5), (1.0, 3.0, 0.2), (7.5, 2.5, 0.9), (25.0, 0.5, 0.99)]:
            want = float(mpmath.betainc(a, b, 0, x, regularized=True))
            assert regularized_incomplete_beta(a, b, x) == pytest.approx(want, abs=1e-10)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            regularized_incomplete_beta(-1.0, 2.0, 0.5)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.0, 2.0, 1.5)


class TestTTest:
    def test_zero_statistic(self):
        assert t_two_sided_p_value(0.0, 10) == 1.0

    def test_infinite_statistic(self):
        assert t_two_sided_p_value(math.inf, 10) == 0.0

    def test_symmetry(self):
        assert t_two_sided_p_value(2.3, 7) == t_two_sided_p_value(-2.3, 7)

    def test_df1_closed_form(self):
        # Cauchy: p = 1 - (2/pi) * arctan(|t|)
        for t in (0.5, 1.0, 4.0):
            want = 1.0 - 2.0 / math.pi * math.atan(t)
            assert t_two_sided_p_value(t, 1) == pytest.approx(want, abs=1e-12)

    def test_against_mpmath_grid(self):
        for t in (0.5, 1.5, 3.0, 8.0):
            for df in (1, 4, 12, 60, 198):
                assert t_two_sided_p_value(t, df) == pytest.approx(
                    mpmath_two_sided_p(t, df), abs=1e-8
                )


class TestFit:
    def test_exact_linear(self):
        x = np.arange(10.0)
        fit = fit_quality_relation(x, 3.0 * x, FitModel.LINEAR)
        assert fit.slope == pytest.approx(3.0, abs=1e-9)
        assert fit.intercept == pytest.approx(0.0, abs=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.p_value < 1e-50
        assert fit.n == 10

    def test_exact_quadratic(self):
        x = np.linspace(-2, 2, 15)
        y = 2.0 * x**2 - 1.0 * x + 3.0
        fit = fit_quality_relation(x, y, FitModel.QUADRATIC)
        assert fit.slope == pytest.approx(2.0, abs=1e-9)
        assert fit.intercept == pytest.approx(3.0, abs=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.p_value < 1e-50

    def test_known_slope_with_noise_is_significant(self):
        rng = np.random.default_rng(5)
        x = np.linspace(0, 1, 50)
        y = 2.0 * x + 0.05 * rng.standard_normal(50)
        fit = fit_quality_relation(x, y)
        assert fit.p_value < 1e-10
        assert fit.slope == pytest.approx(2.0, abs=0.1)

    def test_independent_noise_rarely_looks_linear(self):
        hits = 0
        seeds = range(100)
        for seed in seeds:
            rng = np.random.default_rng(seed)
            x = rng.standard_normal(200)
            y = rng.standard_normal(200)
            if fit_quality_relation(x, y).r_squared < 0.05:
                hits += 1
        assert hits >= 95

    def test_p_value_uniform_under_null(self):
        # two-sided p for independent Gaussians should be ~U(0,1)
        ps = []
        for seed in range(200):
            rng = np.random.default_rng(10_000 + seed)
            ps.append(fit_quality_relation(rng.standard_normal(40), rng.standard_normal(40)).p_value)
        ps = np.asarray(ps)
        assert 0.35 < np.mean(ps) < 0.65
        assert (ps < 0.05).mean() < 0.12

    def test_too_few_points(self):
        with pytest.raises(TooFewPointsError):
            fit_quality_relation([1.0, 2.0], [1.0, 2.0], FitModel.LINEAR)
        with pytest.raises(TooFewPointsError):
            fit_quality_relation([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], FitModel.QUADRATIC)

    def test_zero_variance(self):
        with pytest.raises(ZeroVarianceError):
            fit_quality_relation([1.0, 2.0, 3.0, 4.0], [5.0, 5.0, 5.0, 5.0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            fit_quality_relation([1.0, 2.0, 3.0], [1.0, 2.0])

    def test_constant_x_is_degenerate(self):
        with pytest.raises(ValueError):
            fit_quality_relation([2.0, 2.0, 2.0, 2.0], [1.0, 2.0, 3.0, 4.0])
