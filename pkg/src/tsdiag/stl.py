"""Seasonal-trend decomposition by loess, plus a periodic-means fallback.

Self-contained implementation of the classic inner/outer-loop design
(Cleveland, Cleveland, McRae, Terpenning 1990): cycle-subseries loess smoothing
(degree 0, window 7) extended one period at each end, a triple moving-average
low-pass filter re-smoothed by loess, and a loess trend. The robust variant
runs 10 outer iterations of bisquare re-weighting.

``periodic_means_decompose`` is the deliberately different second route:
centered-moving-average trend and plain per-phase means. It exists so seasonal
strength can be cross-checked against an independent decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadPeriod, TooShort

__all__ = [
    "Decomposition",
    "stl_decompose",
    "periodic_means_decompose",
    "centered_moving_average",
    "loess_smooth",
]

SEASONAL_WINDOW = 7
INNER_ITERATIONS = 2
ROBUST_OUTER_ITERATIONS = 10


@dataclass
class Decomposition:
    """Additive decomposition: values = trend + seasonal + remainder."""

    trend: np.ndarray
    seasonal: np.ndarray
    remainder: np.ndarray
    period: int
    method: str  # "stl" or "periodic_means"


def _next_odd(x: float) -> int:
    v = int(math.ceil(x))
    return v if v % 2 == 1 else v + 1


def loess_smooth(
    y: np.ndarray,
    q: int,
    degree: int,
    rho: np.ndarray | None = None,
    x_eval: np.ndarray | None = None,
) -> np.ndarray:
    """Tricube-weighted local regression of ``y`` on positions 0..m-1.

    ``q`` is the span in points; when q exceeds the sample, the bandwidth is
    inflated by (q - m)/2 as in the original algorithm. ``rho`` multiplies the
    tricube weights (robustness). ``x_eval`` may include out-of-range
    positions, which is how the cycle-subseries extension is produced.
    """
    y = np.asarray(y, dtype=np.float64)
    m = y.shape[0]
    xs = np.arange(m, dtype=np.float64)
    weights_in = np.ones(m) if rho is None else np.asarray(rho, dtype=np.float64)
    if x_eval is None:
        x_eval = xs
    out = np.empty(len(x_eval))

    for i, x0 in enumerate(np.asarray(x_eval, dtype=np.float64)):
        if q < m:
            lo = int(round(x0 - (q - 1) / 2.0))
            lo = min(max(lo, 0), m - q)
            hi = lo + q
            h = max(x0 - lo, hi - 1 - x0)
        else:
            lo, hi = 0, m
            h = max(x0, m - 1 - x0) + (q - m) / 2.0
        xw = xs[lo:hi]
        yw = y[lo:hi]
        d = np.abs(xw - x0) / h if h > 0 else np.zeros_like(xw)
        base = np.clip(1.0 - d**3, 0.0, None) ** 3
        w = base * weights_in[lo:hi]
        sw = float(w.sum())
        if sw <= 0.0:
            # robustness zeroed the whole window: retreat to plain tricube so
            # the fit interpolates instead of copying a raw (outlier) value
            w = base
            sw = float(w.sum())
        if sw <= 0.0:
            out[i] = yw[int(np.argmin(np.abs(xw - x0)))]
            continue
        if degree == 0:
            out[i] = float(w @ yw) / sw
            continue
        swx = float(w @ xw)
        swy = float(w @ yw)
        swxx = float(w @ (xw * xw))
        swxy = float(w @ (xw * yw))
        denom = sw * swxx - swx * swx
        if denom <= 1e-12 * sw * max(swxx, 1.0):
            out[i] = swy / sw
        else:
            slope = (sw * swxy - swx * swy) / denom
            intercept = (swy - slope * swx) / sw
            out[i] = intercept + slope * x0
    return out


def _moving_average(x: np.ndarray, w: int) -> np.ndarray:
    """Uniform moving average, valid mode (output shorter by w - 1)."""
    c = np.cumsum(np.concatenate([[0.0], x]))
    return (c[w:] - c[:-w]) / w


def stl_decompose(ts, period: int, robust: bool = False) -> Decomposition:
    """Decompose into trend + seasonal + remainder by iterated loess.

    Accepts a TimeSeries or a plain array. Requires period >= 2 (BadPeriod)
    and n >= 3 * period (TooShort). The seasonal component may drift slowly
    across cycles (cycle-subseries window 7, degree 0); the trend window is
    the smallest odd integer >= 1.5 * period / (1 - 1.5/7).
    """
    y = np.asarray(getattr(ts, "values", ts), dtype=np.float64)
    n = y.shape[0]
    if period < 2:
        raise BadPeriod(f"period must be >= 2, got {period}")
    if n < 3 * period:
        raise TooShort(f"need n >= {3 * period} for period {period}, got {n}")

    n_t = _next_odd(1.5 * period / (1.0 - 1.5 / SEASONAL_WINDOW))
    n_l = _next_odd(period)
    outer = ROBUST_OUTER_ITERATIONS if robust else 0

    trend = np.zeros(n)
    seasonal = np.zeros(n)
    rho = np.ones(n)

    for outer_iter in range(outer + 1):
        for _ in range(INNER_ITERATIONS):
            detrended = y - trend
            # cycle-subseries smoothing, extended one period on both ends
            cycle = np.empty(n + 2 * period)
            for k in range(period):
                sub = detrended[k::period]
                mk = sub.shape[0]
                fitted = loess_smooth(
                    sub,
                    q=SEASONAL_WINDOW,
                    degree=0,
                    rho=rho[k::period],
                    x_eval=np.arange(-1, mk + 1, dtype=np.float64),
                )
                cycle[k + period * np.arange(mk + 2)] = fitted
            # low-pass: MA(period) twice, MA(3), then loess degree 1
            low = _moving_average(_moving_average(_moving_average(cycle, period), period), 3)
            low = loess_smooth(low, q=n_l, degree=1)
            seasonal = cycle[period : period + n] - low
            trend = loess_smooth(y - seasonal, q=n_t, degree=1, rho=rho)
        if outer_iter < outer:
            resid = y - trend - seasonal
            scale = 6.0 * float(np.median(np.abs(resid)))
            if scale <= 0.0:
                rho = np.ones(n)
            else:
                u = np.clip(np.abs(resid) / scale, 0.0, 1.0)
                rho = (1.0 - u * u) ** 2

    return Decomposition(
        trend=trend,
        seasonal=seasonal,
        remainder=y - trend - seasonal,
        period=period,
        method="stl",
    )


def centered_moving_average(x: np.ndarray, window: int) -> np.ndarray:
    """Centered moving average keeping full length.

    Even windows use the classical half-weight end taps (window + 1 points), so
    the kernel is always symmetric. Near the edges the kernel is renormalized
    over the taps that fall inside the series.
    """
    x = np.asarray(x, dtype=np.float64)
    if window < 2:
        raise BadPeriod(f"window must be >= 2, got {window}")
    if window % 2 == 1:
        taps = np.full(window, 1.0 / window)
    else:
        taps = np.full(window + 1, 1.0 / window)
        taps[0] = taps[-1] = 0.5 / window
    num = np.convolve(x, taps, mode="same")
    den = np.convolve(np.ones_like(x), taps, mode="same")
    return num / den


def periodic_means_decompose(ts, period: int) -> Decomposition:
    """Classical decomposition: CMA trend plus centered per-phase means."""
    y = np.asarray(getattr(ts, "values", ts), dtype=np.float64)
    n = y.shape[0]
    if period < 2:
        raise BadPeriod(f"period must be >= 2, got {period}")
    if n < 3 * period:
        raise TooShort(f"need n >= {3 * period} for period {period}, got {n}")
    trend = centered_moving_average(y, period)
    detrended = y - trend
    phase_means = np.array([detrended[k::period].mean() for k in range(period)])
    phase_means -= phase_means.mean()
    seasonal = phase_means[np.arange(n) % period]
    return Decomposition(
        trend=trend,
        seasonal=seasonal,
        remainder=y - trend - seasonal,
        period=period,
        method="periodic_means",
    )
