"""Variance-stability tests: segmented spread checks, ARCH effects, drift.

Four complementary probes. Levene (median-centered) and Bartlett compare
spread across contiguous segments, the ARCH LM regression looks for volatility
clustering, and the variance-ratio F compares the first and last thirds for
monotone drift. All report detected = p < alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chi2 as chi2_dist
from scipy.stats import f as f_dist

from . import notes as N
from .errors import BadK, DegenerateSegment, TooShort, ZeroVariance
from .regression import ols_fit
from .series import TimeSeries

__all__ = [
    "VarianceResult",
    "split_segments",
    "levene_test",
    "bartlett_test",
    "arch_lm_test",
    "variance_ratio_test",
]

MIN_SEGMENT = 10
ARCH_MIN_TAIL = 30
VR_MIN_N = 60


@dataclass
class VarianceResult:
    """Outcome of one variance-battery test."""

    test_id: str
    statistic: float
    p_value: float
    df: str
    detected: bool
    notes: list[str] = field(default_factory=list)
    segments: int | None = None
    lags: int | None = None


def split_segments(ts, k: int) -> list[np.ndarray]:
    """Split the value array into k contiguous segments, earlier ones longer.

    Requires k >= 2 (BadK) and at least 10 points per segment (TooShort).
    """
    values = np.asarray(getattr(ts, "values", ts), dtype=np.float64)
    if k < 2:
        raise BadK(f"need at least 2 segments, got k={k}")
    n = values.shape[0]
    if n < MIN_SEGMENT * k:
        raise TooShort(f"need n >= {MIN_SEGMENT * k} for k={k} segments, got {n}")
    base, rem = divmod(n, k)
    out = []
    start = 0
    for i in range(k):
        size = base + (1 if i < rem else 0)
        out.append(values[start : start + size])
        start += size
    return out


def levene_test(segments: list[np.ndarray], alpha: float = 0.05) -> VarianceResult:
    """Brown-Forsythe spread test: one-way ANOVA on |x - median(segment)|."""
    _check_segments(segments)
    k = len(segments)
    z = [np.abs(s - np.median(s)) for s in segments]
    for g in z:
        if float(np.ptp(g)) == 0.0:
            raise DegenerateSegment("a segment has zero spread around its median")
    n_j = np.array([len(g) for g in z], dtype=np.float64)
    total = float(n_j.sum())
    means = np.array([g.mean() for g in z])
    grand = float(np.concatenate(z).mean())
    ss_between = float(np.sum(n_j * (means - grand) ** 2))
    ss_within = float(sum(np.sum((g - m) ** 2) for g, m in zip(z, means)))
    if ss_within <= 0.0:
        raise DegenerateSegment("every segment is constant around its median")
    dfn, dfd = k - 1, int(total) - k
    stat = (ss_between / dfn) / (ss_within / dfd)
    pval = float(f_dist.sf(stat, dfn, dfd))
    detected = pval < alpha
    return VarianceResult(
        test_id="levene",
        statistic=stat,
        p_value=pval,
        df=f"F({dfn}, {dfd})",
        detected=detected,
        notes=[N.VARIANCE_CHANGE] if detected else [],
        segments=k,
    )


def bartlett_test(segments: list[np.ndarray], alpha: float = 0.05) -> VarianceResult:
    """Bartlett's equal-variance test (chi-squared, k-1 df)."""
    _check_segments(segments)
    k = len(segments)
    n_j = np.array([len(s) for s in segments], dtype=np.float64)
    total = float(n_j.sum())
    variances = np.array([np.var(s, ddof=1) for s in segments])
    if np.any(variances <= 0.0):
        raise ZeroVariance("a segment has zero sample variance")
    pooled = float(np.sum((n_j - 1) * variances)) / (total - k)
    stat = (total - k) * math.log(pooled) - float(np.sum((n_j - 1) * np.log(variances)))
    correction = 1.0 + (float(np.sum(1.0 / (n_j - 1))) - 1.0 / (total - k)) / (3.0 * (k - 1))
    stat = max(stat / correction, 0.0)
    pval = float(chi2_dist.sf(stat, k - 1))
    detected = pval < alpha
    result_notes = [N.BARTLETT_NORMALITY]
    if detected:
        result_notes.append(N.VARIANCE_CHANGE)
    return VarianceResult(
        test_id="bartlett",
        statistic=stat,
        p_value=pval,
        df=f"chi2({k - 1})",
        detected=detected,
        notes=result_notes,
        segments=k,
    )


def arch_lm_test(ts: TimeSeries, lags: int | None = None, alpha: float = 0.05) -> VarianceResult:
    """Engle-style LM test: regress squared demeaned values on their own lags.

    LM = n' * R^2 against chi-squared(q); q defaults to min(10, n // 20).
    """
    y = ts.values
    n = ts.n
    q = min(10, n // 20) if lags is None else lags
    if q < 1:
        raise TooShort(f"arch lm needs at least one lag (n={n})")
    if n - q < ARCH_MIN_TAIL:
        raise TooShort(f"arch lm needs n - lags >= {ARCH_MIN_TAIL}, got {n - q}")
    e2 = (y - y.mean()) ** 2
    endog = e2[q:]
    cols = [np.ones(n - q)]
    for i in range(1, q + 1):
        cols.append(e2[q - i : n - i])
    tss = float(np.sum((endog - endog.mean()) ** 2))
    if tss <= 0.0:
        raise ZeroVariance("squared values have no variation")
    fit = ols_fit(np.column_stack(cols), endog)
    r2 = 1.0 - fit.ssr / tss
    stat = (n - q) * r2
    pval = float(chi2_dist.sf(stat, q))
    detected = pval < alpha
    result_notes = [N.ARCH_CAVEAT]
    if detected:
        result_notes.append(N.ARCH_DETECTED)
    return VarianceResult(
        test_id="arch_lm",
        statistic=stat,
        p_value=pval,
        df=f"chi2({q})",
        detected=detected,
        notes=result_notes,
        lags=q,
    )


def variance_ratio_test(ts: TimeSeries, alpha: float = 0.05) -> VarianceResult:
    """Two-sided F test on the variances of the first and last thirds."""
    n = ts.n
    if n < VR_MIN_N:
        raise TooShort(f"variance ratio needs n >= {VR_MIN_N}, got {n}")
    third = n // 3
    early = ts.values[:third]
    late = ts.values[-third:]
    var_early = float(np.var(early, ddof=1))
    var_late = float(np.var(late, ddof=1))
    if var_early <= 0.0 or var_late <= 0.0:
        raise ZeroVariance("a third of the series has zero variance")
    stat = var_late / var_early
    dfn, dfd = third - 1, third - 1
    lower = float(f_dist.cdf(stat, dfn, dfd))
    upper = float(f_dist.sf(stat, dfn, dfd))
    pval = min(2.0 * min(lower, upper), 1.0)
    detected = pval < alpha
    result_notes = [N.VARIANCE_RATIO_SCOPE]
    if detected:
        result_notes.append(N.VARIANCE_CHANGE)
    return VarianceResult(
        test_id="variance_ratio",
        statistic=stat,
        p_value=pval,
        df=f"F({dfn}, {dfd})",
        detected=detected,
        notes=result_notes,
    )


def _check_segments(segments: list[np.ndarray]) -> None:
    if len(segments) < 2:
        raise BadK("need at least 2 segments")
    for s in segments:
        if len(s) < MIN_SEGMENT:
            raise TooShort(f"segment of length {len(s)} is below {MIN_SEGMENT}")
