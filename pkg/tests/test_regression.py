"""OLS kernel, Newey-West long-run variance, and ADF lag selection."""
import numpy as np
import pytest

from tsdiag.errors import DimensionMismatch, LagTooLarge, RankDeficient, TooShort
from tsdiag.regression import (
    TrendSpec,
    build_adf_design,
    newey_west_lrv,
    ols_fit,
    schwert_maxlag,
    select_adf_lag,
)
from tsdiag.synth import normals

from conftest import ar1_series, daily_ts


class TestOlsFit:
    def test_exact_line(self):
        X = np.array([[1.0, 1.0], [1.0, 2.0], [1.0, 3.0]])
        y = np.array([2.0, 4.0, 6.0])
        fit = ols_fit(X, y)
        assert fit.coefficients == pytest.approx([0.0, 2.0], abs=1e-12)
        assert fit.residuals == pytest.approx([0.0, 0.0, 0.0], abs=1e-12)

    def test_intercept_only_is_mean(self):
        y = np.array([3.0, -1.0, 4.0, 1.0, 5.0])
        fit = ols_fit(np.ones((5, 1)), y)
        assert fit.coefficients[0] == pytest.approx(y.mean(), rel=1e-14)

    def test_duplicate_columns_rank_deficient(self):
        X = np.ones((3, 2))
        with pytest.raises(RankDeficient):
            ols_fit(X, np.array([1.0, 2.0, 3.0]))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            ols_fit(np.ones((5, 1)), np.ones(4))

    def test_residuals_orthogonal_to_regressors(self):
        e = normals(7, 80)
        t = np.arange(80.0)
        X = np.column_stack([np.ones(80), t, t ** 2])
        y = 1.0 + 0.5 * t + e
        fit = ols_fit(X, y)
        tol = 1e-8 * np.linalg.norm(y)
        assert np.all(np.abs(X.T @ fit.residuals) < tol)

    def test_aic_identity(self):
        e = normals(11, 60)
        X = np.column_stack([np.ones(60), np.arange(60.0)])
        fit = ols_fit(X, 2.0 + e)
        assert fit.aic == pytest.approx(2 * 2 - 2 * fit.loglik, rel=1e-12)

    def test_ssr_beats_perturbed_coefficients(self):
        e = normals(13, 50)
        X = np.column_stack([np.ones(50), np.arange(50.0)])
        y = 3.0 + 0.2 * np.arange(50.0) + e
        fit = ols_fit(X, y)
        for j in range(2):
            for bump in (0.9, 1.1):
                beta = fit.coefficients.copy()
                beta[j] = beta[j] * bump if beta[j] != 0 else 0.1
                ssr = float(np.sum((y - X @ beta) ** 2))
                assert fit.ssr <= ssr + 1e-10

    def test_stderr_matches_covariance_diagonal(self):
        e = normals(17, 40)
        X = np.column_stack([np.ones(40), np.arange(40.0)])
        y = 1.0 + 0.3 * np.arange(40.0) + e
        fit = ols_fit(X, y)
        cov = fit.sigma2 * np.linalg.inv(X.T @ X)
        assert fit.stderr == pytest.approx(np.sqrt(np.diag(cov)), rel=1e-10)

    def test_shapes(self):
        X = np.column_stack([np.ones(30), np.arange(30.0)])
        fit = ols_fit(X, normals(19, 30))
        assert len(fit.residuals) == fit.nobs == 30
        assert len(fit.coefficients) == len(fit.stderr) == 2
        assert fit.df_resid == 28


class TestNeweyWest:
    def test_lag0_is_mean_of_squares(self):
        assert newey_west_lrv(np.array([1.0, -1.0, 1.0, -1.0]), 0) == pytest.approx(1.0)

    def test_ones_lag1(self):
        # gamma0 = 1, gamma1 = 3/4, weight 1/2 -> 1 + 0.75
        assert newey_west_lrv(np.ones(4), 1) == pytest.approx(1.75)

    def test_constant_closed_form(self):
        c, n, lag = 2.5, 12, 4
        u = np.full(n, c)
        expect = c ** 2 * (1 + 2 * sum(
            (1 - j / (lag + 1)) * (n - j) / n for j in range(1, lag + 1)))
        assert newey_west_lrv(u, lag) == pytest.approx(expect, rel=1e-12)

    def test_sign_flip_invariant(self):
        u = normals(23, 100)
        for lag in (0, 3, 7):
            assert newey_west_lrv(u, lag) == pytest.approx(
                newey_west_lrv(-u, lag), rel=1e-14)

    def test_lag0_equals_mean_square_random(self):
        u = normals(29, 64)
        assert newey_west_lrv(u, 0) == pytest.approx(float(np.mean(u ** 2)), rel=1e-14)

    def test_lag_too_large(self):
        with pytest.raises(LagTooLarge):
            newey_west_lrv(np.ones(5), 5)

    def test_nonnegative_on_demeaned_noise(self):
        for seed in range(20):
            u = normals(seed, 120)
            u = u - u.mean()
            assert newey_west_lrv(u, 11) >= 0.0


class TestAdfLagSelection:
    def test_schwert_rule_values(self):
        assert schwert_maxlag(100) == 12
        assert schwert_maxlag(50) == 10
        assert schwert_maxlag(20) == 8

    def test_deterministic(self):
        ts = daily_ts(normals(31, 200))
        assert select_adf_lag(ts) == select_adf_lag(ts)

    def test_ar1_prefers_small_lags(self):
        # strong lag-1 dynamics: AIC should stop early
        hits = 0
        for seed in range(100):
            x = ar1_series(seed, 500, phi=0.8)
            if select_adf_lag(daily_ts(x)) <= 3:
                hits += 1
        assert hits >= 90

    def test_too_short_effective_sample(self):
        with pytest.raises(TooShort):
            select_adf_lag(np.ones(10), TrendSpec.CONSTANT_TREND)

    def test_design_shapes(self):
        v = normals(37, 60)
        y, X = build_adf_design(v, lags=2, spec=TrendSpec.CONSTANT_TREND, start=2)
        # rows t = start+1 .. n-1; cols const, trend, y_{t-1}, 2 dlags
        assert X.shape == (57, 5)
        assert y.shape == (57,)
        assert np.all(X[:, 0] == 1.0)
        # lagged level column carries the raw series
        assert X[:, 2] == pytest.approx(v[2:-1])
