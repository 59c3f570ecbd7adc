"""OLS kernel, long-run variance, and lag selection for the unit-root tests.

One fitting routine serves every regression in the package. It factors the
design with a QR decomposition (never the normal equations), raises
:class:`RankDeficient` on numerically collinear designs, and reports the
Gaussian log-likelihood at the MLE variance so AIC comparisons are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, LagTooLarge, NonFiniteValue, RankDeficient, TooShort

__all__ = [
    "TrendSpec",
    "LinearFit",
    "ols_fit",
    "newey_west_lrv",
    "schwert_maxlag",
    "build_adf_design",
    "select_adf_lag",
]


class TrendSpec(Enum):
    """Deterministic terms included in a unit-root regression."""

    CONSTANT_ONLY = "constant-only"
    CONSTANT_TREND = "constant-trend"

    @property
    def label(self) -> str:
        return self.value

    @property
    def n_deterministic(self) -> int:
        return 1 if self is TrendSpec.CONSTANT_ONLY else 2


@dataclass
class LinearFit:
    """Result of one least-squares fit."""

    coefficients: np.ndarray
    stderr: np.ndarray
    residuals: np.ndarray
    nobs: int
    df_resid: int
    ssr: float
    sigma2: float  # SSR / (n - k)
    loglik: float  # Gaussian, at the MLE variance SSR / n
    aic: float     # 2k - 2 loglik

    @property
    def tstats(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.coefficients / self.stderr


def ols_fit(X: np.ndarray, y: np.ndarray) -> LinearFit:
    """Least squares of ``y`` on the columns of ``X`` via QR factorization.

    Requires n > k >= 1 and finite inputs. Raises :class:`RankDeficient` when
    the R factor's diagonal signals collinearity.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise DimensionMismatch(f"X {X.shape} incompatible with y {y.shape}")
    n, k = X.shape
    if k < 1 or n <= k:
        raise DimensionMismatch(f"need n > k >= 1, got n={n}, k={k}")
    if not (np.isfinite(X).all() and np.isfinite(y).all()):
        raise NonFiniteValue("design matrix and response must be finite")

    Q, R = np.linalg.qr(X)
    rdiag = np.abs(np.diag(R))
    tol = max(n, k) * np.finfo(np.float64).eps * float(rdiag.max())
    if float(rdiag.min()) <= tol:
        raise RankDeficient("design matrix is rank deficient")

    coef = np.linalg.solve(R, Q.T @ y)
    resid = y - X @ coef
    ssr = float(resid @ resid)
    df = n - k
    sigma2 = ssr / df
    # diag((X'X)^-1) = row sums of squares of R^-1
    rinv = np.linalg.solve(R, np.eye(k))
    stderr = np.sqrt(sigma2 * (rinv * rinv).sum(axis=1))
    if ssr > 0.0:
        loglik = -0.5 * n * (math.log(2.0 * math.pi) + math.log(ssr / n) + 1.0)
    else:
        loglik = math.inf
    aic = 2.0 * k - 2.0 * loglik
    return LinearFit(
        coefficients=coef,
        stderr=stderr,
        residuals=resid,
        nobs=n,
        df_resid=df,
        ssr=ssr,
        sigma2=sigma2,
        loglik=loglik,
        aic=aic,
    )


def newey_west_lrv(u: np.ndarray, lag: int) -> float:
    """Bartlett-kernel long-run variance of ``u``.

    s^2(l) = gamma_0 + 2 * sum_{j=1..l} (1 - j/(l+1)) * gamma_j with
    gamma_j = (1/n) * sum_t u_t u_{t-j}. ``lag`` must satisfy 0 <= lag < n.
    """
    u = np.asarray(u, dtype=np.float64)
    n = u.shape[0]
    if lag < 0 or lag >= n:
        raise LagTooLarge(f"lag must be in [0, {n - 1}], got {lag}")
    s2 = float(u @ u) / n
    for j in range(1, lag + 1):
        gamma_j = float(u[j:] @ u[:-j]) / n
        s2 += 2.0 * (1.0 - j / (lag + 1.0)) * gamma_j
    return s2


def schwert_maxlag(n: int) -> int:
    """Schwert rule of thumb: floor(12 * (n/100)^0.25)."""
    return int(math.floor(12.0 * (n / 100.0) ** 0.25))


def build_adf_design(
    values: np.ndarray, lags: int, spec: TrendSpec, start: int
) -> tuple[np.ndarray, np.ndarray]:
    """Dickey-Fuller regression arrays for rows t = start+1 .. n-1.

    Column order: constant, [linear trend,] y_{t-1}, dy_{t-1} .. dy_{t-lags}.
    ``start`` >= lags aligns the sample; lag selection passes start = maxlag so
    every candidate is fit on the same rows.
    """
    y = np.asarray(values, dtype=np.float64)
    n = y.shape[0]
    if start < lags:
        raise LagTooLarge(f"start={start} must be >= lags={lags}")
    dy = np.diff(y)
    endog = dy[start:]
    cols = [np.ones(n - 1 - start)]
    if spec is TrendSpec.CONSTANT_TREND:
        cols.append(np.arange(start + 1, n, dtype=np.float64))
    cols.append(y[start : n - 1])
    for i in range(1, lags + 1):
        cols.append(dy[start - i : n - 1 - i])
    return endog, np.column_stack(cols)


def _max_feasible_lag(n: int, spec: TrendSpec) -> int:
    """Largest lag order the selection grid may reach.

    Three caps on the Schwert value: the n-13 cap keeps n - p - 3 >= 10 for
    every candidate, and the df cap keeps at least 2 residual degrees of
    freedom in the largest candidate regression.
    """
    return min(schwert_maxlag(n), n - 13, (n - 4 - spec.n_deterministic) // 2)


def select_adf_lag(values, spec: TrendSpec = TrendSpec.CONSTANT_ONLY) -> int:
    """AIC-minimizing augmentation order for the Dickey-Fuller regression.

    Accepts a TimeSeries or a plain array. All candidate lags 0..maxlag are
    fit on the common sample aligned at maxlag; ties go to the smaller lag.
    Raises :class:`TooShort` when no candidate regression is feasible.
    """
    values = getattr(values, "values", values)
    y = np.asarray(values, dtype=np.float64)
    n = y.shape[0]
    maxlag = _max_feasible_lag(n, spec)
    if maxlag < 0:
        raise TooShort(f"series of length {n} cannot support lag selection")
    k_largest = spec.n_deterministic + 1 + maxlag
    if n - maxlag - 2 <= k_largest:
        raise TooShort(f"series of length {n} too short for maxlag {maxlag}")

    best_lag = 0
    best_aic = math.inf
    for p in range(0, maxlag + 1):
        endog, X = build_adf_design(y, p, spec, start=maxlag)
        fit = ols_fit(X, endog)
        if fit.aic < best_aic:
            best_aic = fit.aic
            best_lag = p
    return best_lag
