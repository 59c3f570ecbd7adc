"""Frozen critical-value tables and p-value response surfaces.

Sources, checked against statsmodels 0.14.6 on 2026-08-22:
  - MacKinnon (1994) response-surface coefficients for tau p-values (the
    single-series rows of the tables used by statsmodels' adfuller).
  - MacKinnon (2010) critical-value surfaces cv = b0 + b1/N + b2/N^2 + b3/N^3.
  - KPSS (1992) Table 1 asymptotic critical values.
  - Zivot-Andrews (1992) model A (intercept break) asymptotic critical values.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import norm

from .regression import TrendSpec

# ---------------------------------------------------------------------------
# MacKinnon 1994: tau -> p-value via norm.cdf(polynomial(tau))
# ---------------------------------------------------------------------------

# constant-only
_TAU_STAR_C = -1.61
_TAU_MIN_C = -18.83
_TAU_MAX_C = 2.74
_TAU_SMALLP_C = (2.1659, 1.4412, 0.038269)
_TAU_LARGEP_C = (1.7339, 0.93202, -0.12745, -0.010368)

# constant + trend
_TAU_STAR_CT = -2.89
_TAU_MIN_CT = -16.18
_TAU_MAX_CT = 0.7
_TAU_SMALLP_CT = (3.2512, 1.6047, 0.049588)
_TAU_LARGEP_CT = (2.5261, 0.61654, -0.37956, -0.060285)


def adf_pvalue(stat: float, spec: TrendSpec) -> float:
    """MacKinnon (1994) approximate asymptotic p-value for a tau statistic."""
    if spec is TrendSpec.CONSTANT_ONLY:
        star, lo, hi = _TAU_STAR_C, _TAU_MIN_C, _TAU_MAX_C
        smallp, largep = _TAU_SMALLP_C, _TAU_LARGEP_C
    else:
        star, lo, hi = _TAU_STAR_CT, _TAU_MIN_CT, _TAU_MAX_CT
        smallp, largep = _TAU_SMALLP_CT, _TAU_LARGEP_CT
    if stat > hi:
        return 1.0
    if stat < lo:
        return 0.0
    coeffs = smallp if stat <= star else largep
    z = sum(c * stat**i for i, c in enumerate(coeffs))
    return float(norm.cdf(z))


# ---------------------------------------------------------------------------
# MacKinnon 2010: finite-sample critical values, cv = b0 + b1/N + b2/N^2 + b3/N^3
# ---------------------------------------------------------------------------

_CV_2010_C = {
    0.01: (-3.43035, -6.5393, -16.786, -79.433),
    0.05: (-2.86154, -2.8903, -4.234, -40.040),
    0.10: (-2.56677, -1.5384, -2.809, 0.0),
}
_CV_2010_CT = {
    0.01: (-3.95877, -9.0531, -28.428, -134.155),
    0.05: (-3.41049, -4.3904, -9.036, -45.374),
    0.10: (-3.12705, -2.5856, -3.925, -22.380),
}


def adf_critical_values(spec: TrendSpec, nobs: int) -> dict[float, float]:
    """Finite-sample tau critical values at the 1/5/10% levels."""
    table = _CV_2010_C if spec is TrendSpec.CONSTANT_ONLY else _CV_2010_CT
    out = {}
    for level, (b0, b1, b2, b3) in table.items():
        out[level] = b0 + b1 / nobs + b2 / nobs**2 + b3 / nobs**3
    return out


# ---------------------------------------------------------------------------
# KPSS 1992, Table 1
# ---------------------------------------------------------------------------

_KPSS_CV_C = {0.10: 0.347, 0.05: 0.463, 0.01: 0.739}
_KPSS_CV_CT = {0.10: 0.119, 0.05: 0.146, 0.01: 0.216}


def kpss_critical_values(spec: TrendSpec) -> dict[float, float]:
    table = _KPSS_CV_C if spec is TrendSpec.CONSTANT_ONLY else _KPSS_CV_CT
    return dict(table)


def kpss_pvalue(stat: float, spec: TrendSpec) -> float:
    """Interpolated p-value bound, clamped to [0.01, 0.10].

    Linear interpolation of the tabulated (cv, level) anchors; outside the
    table the nearest bound is returned, so the value is a bound rather than
    an exact tail probability.
    """
    table = kpss_critical_values(spec)
    cvs = np.array([table[0.10], table[0.05], table[0.01]])
    levels = np.array([0.10, 0.05, 0.01])
    return float(np.interp(stat, cvs, levels))


# ---------------------------------------------------------------------------
# Zivot-Andrews 1992, model A (intercept break)
# ---------------------------------------------------------------------------

_ZA_CV_MODEL_A = {0.01: -5.34, 0.05: -4.80, 0.10: -4.58}


def za_critical_values() -> dict[float, float]:
    return dict(_ZA_CV_MODEL_A)


def cv_at(critical_values: dict[float, float], alpha: float) -> float:
    """Critical value at ``alpha``, falling back to the nearest tabulated level."""
    if alpha in critical_values:
        return critical_values[alpha]
    nearest = min(critical_values, key=lambda lvl: abs(lvl - alpha))
    return critical_values[nearest]
