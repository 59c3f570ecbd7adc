"""Seasonality detection: rank test on phase groups plus decomposition strength.

Two very different instruments per candidate period. Kruskal-Wallis compares
the distribution of detrended values across the phases of the cycle (a rank
test, so it is robust to spikes); seasonal strength measures how much variance
the decomposition's seasonal component explains. Reporting both avoids tying
the verdict to a single decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chi2 as chi2_dist
from scipy.stats import rankdata

from . import notes as N
from .errors import AllTied, BadPeriod, DegenerateVariance, TestSkipped, TooShort
from .series import SeasonalPeriod, TimeSeries
from .stl import Decomposition, centered_moving_average, stl_decompose

__all__ = [
    "SeasonalityResult",
    "seasonal_strength",
    "kruskal_wallis_seasonal",
    "detect_seasonality",
    "STRENGTH_THRESHOLD",
]

STRENGTH_THRESHOLD = 0.6


@dataclass
class SeasonalityResult:
    """Outcome of one seasonality check for one candidate period."""

    test_id: str
    period: int
    label: str
    statistic: float | None
    p_value: float | None
    threshold: float | None
    detected: bool
    notes: list[str] = field(default_factory=list)

    @property
    def skipped(self) -> bool:
        return self.statistic is None


def seasonal_strength(
    decomposition: Decomposition,
    label: str | None = None,
    threshold: float = STRENGTH_THRESHOLD,
) -> SeasonalityResult:
    """F_s = max(0, 1 - Var(remainder) / Var(seasonal + remainder)).

    detected when F_s > threshold. Raises DegenerateVariance when the
    detrended series has no variance at all.
    """
    label = label if label is not None else f"period-{decomposition.period}"
    detrended = decomposition.seasonal + decomposition.remainder
    deseasonal_var = float(np.var(detrended))
    # tolerance is relative to the series scale so that an exactly constant
    # input skips instead of scoring floating-point dust
    recon = decomposition.trend + detrended
    scale = max(float(np.max(np.abs(recon))), 1.0)
    if deseasonal_var <= (1e-12 * scale) ** 2:
        raise DegenerateVariance("seasonal + remainder variance is zero")
    strength = max(0.0, 1.0 - float(np.var(decomposition.remainder)) / deseasonal_var)
    detected = strength > threshold
    result_notes = [N.seasonal_strength_label(label)]
    if detected:
        result_notes.append(N.seasonality_detected(label))
    return SeasonalityResult(
        test_id="seasonal_strength",
        period=decomposition.period,
        label=label,
        statistic=strength,
        p_value=None,
        threshold=threshold,
        detected=detected,
        notes=result_notes,
    )


def _kruskal_h(groups: list[np.ndarray]) -> float:
    """Kruskal-Wallis H with tie correction over the pooled sample."""
    pooled = np.concatenate(groups)
    total = pooled.shape[0]
    ranks = rankdata(pooled)
    h = 0.0
    start = 0
    for g in groups:
        size = g.shape[0]
        rank_mean = float(ranks[start : start + size].mean())
        h += size * (rank_mean - (total + 1) / 2.0) ** 2
        start += size
    h *= 12.0 / (total * (total + 1))
    _, counts = np.unique(pooled, return_counts=True)
    correction = 1.0 - float(np.sum(counts**3 - counts)) / (total**3 - total)
    if correction <= 0.0:
        raise AllTied("all observations are tied")
    return h / correction


def kruskal_wallis_seasonal(
    ts, period: int, alpha: float = 0.05, label: str | None = None
) -> SeasonalityResult:
    """Rank test for unequal location across the phases of one cycle.

    The series is detrended with a centered moving average of the period
    (full-length, edge-renormalized), grouped by phase, and the tie-corrected
    H statistic is referred to chi-squared(period - 1).
    """
    y = np.asarray(getattr(ts, "values", ts), dtype=np.float64)
    n = y.shape[0]
    if period < 2:
        raise BadPeriod(f"period must be >= 2, got {period}")
    if n < 3 * period:
        raise TooShort(f"need n >= {3 * period} for period {period}, got {n}")
    label = label if label is not None else f"period-{period}"
    detrended = y - centered_moving_average(y, period)
    scale = max(float(np.max(np.abs(y))), 1.0)
    if float(np.ptp(detrended)) <= 1e-12 * scale:
        raise AllTied("detrended series is constant")
    groups = [detrended[k::period] for k in range(period)]
    stat = _kruskal_h(groups)
    pval = float(chi2_dist.sf(stat, period - 1))
    detected = pval < alpha
    return SeasonalityResult(
        test_id="kruskal_wallis",
        period=period,
        label=label,
        statistic=stat,
        p_value=pval,
        threshold=None,
        detected=detected,
        notes=[N.seasonality_detected(label)] if detected else [],
    )


def detect_seasonality(
    ts: TimeSeries,
    periods: list[SeasonalPeriod],
    alpha: float = 0.05,
    threshold: float = STRENGTH_THRESHOLD,
    robust_stl: bool = False,
) -> list[SeasonalityResult]:
    """Run both checks for every candidate period.

    Results are ordered by (period, test_id). A check that cannot run on this
    input degrades to a skipped entry carrying the reason, never an exception.
    """
    out: list[SeasonalityResult] = []
    for sp in sorted(periods, key=lambda s: s.period):
        try:
            out.append(kruskal_wallis_seasonal(ts, sp.period, alpha=alpha, label=sp.label))
        except (TestSkipped, TooShort) as exc:
            out.append(_skipped("kruskal_wallis", sp, str(exc)))
        try:
            decomp = stl_decompose(ts, sp.period, robust=robust_stl)
            out.append(seasonal_strength(decomp, label=sp.label, threshold=threshold))
        except (TestSkipped, TooShort) as exc:
            out.append(_skipped("seasonal_strength", sp, str(exc)))
    return out


def _skipped(test_id: str, sp: SeasonalPeriod, reason: str) -> SeasonalityResult:
    return SeasonalityResult(
        test_id=test_id,
        period=sp.period,
        label=sp.label,
        statistic=None,
        p_value=None,
        threshold=None,
        detected=False,
        notes=[reason],
    )
