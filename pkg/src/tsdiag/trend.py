"""Unit-root and stationarity tests plus the combined trend diagnosis.

Four tests, two complementary nulls:

  - adf_test / pp_test: null = unit root, rejection = stationary.
  - kpss_test: null = stationary (around a level or a trend).
  - zivot_andrews_test: null = unit root with no break; the alternative allows
    one intercept shift at an estimated date.

``detected`` is always oriented as "evidence of non-stationarity": for ADF and
PP that is a FAILURE to reject (p >= alpha), for KPSS a rejection (p < alpha),
and for Zivot-Andrews a statistic above the critical value.

``classify_trend`` folds the seven battery results into one label via a fixed
decision table; see its docstring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import notes as N
from .critvals import (
    adf_critical_values,
    adf_pvalue,
    cv_at,
    kpss_critical_values,
    kpss_pvalue,
    za_critical_values,
)
from .errors import RankDeficient, TestSkipped, TooShort, WrongResultSet
from .regression import (
    TrendSpec,
    build_adf_design,
    newey_west_lrv,
    ols_fit,
    schwert_maxlag,
    select_adf_lag,
)
from .series import TimeSeries

__all__ = [
    "TrendSpec",
    "TrendLabel",
    "UnitRootResult",
    "TrendDiagnosis",
    "adf_test",
    "kpss_test",
    "pp_test",
    "zivot_andrews_test",
    "classify_trend",
]

ZA_MIN_N = 50
PP_MIN_N = 25


class TrendLabel(Enum):
    STATIONARY = "stationary"
    UNIT_ROOT = "unit_root"
    DETERMINISTIC_TREND = "deterministic_trend"
    STRUCTURAL_BREAK = "structural_break"
    INCONCLUSIVE = "inconclusive"


@dataclass
class UnitRootResult:
    """Outcome of one trend-battery test."""

    test_id: str
    spec: TrendSpec
    statistic: float
    p_value: float | None
    critical_values: dict[float, float]
    lags_used: int
    detected: bool
    notes: list[str] = field(default_factory=list)
    break_index: int | None = None  # set iff test_id == "zivot_andrews"


@dataclass
class TrendDiagnosis:
    label: TrendLabel
    explanation: str
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# augmented Dickey-Fuller
# ---------------------------------------------------------------------------

def adf_test(
    ts: TimeSeries, spec: TrendSpec = TrendSpec.CONSTANT_ONLY, alpha: float = 0.05
) -> UnitRootResult:
    """ADF tau test with AIC-selected augmentation order.

    detected (= unit root plausible) when p_value >= alpha.
    """
    y = ts.values
    try:
        p = select_adf_lag(y, spec)
        endog, X = build_adf_design(y, p, spec, start=p)
        fit = ols_fit(X, endog)
    except RankDeficient as exc:
        raise TestSkipped(f"adf regression is degenerate: {exc}") from exc
    tau = float(fit.tstats[spec.n_deterministic])
    pval = adf_pvalue(tau, spec)
    cvs = adf_critical_values(spec, fit.nobs)
    detected = pval >= alpha
    return UnitRootResult(
        test_id="adf",
        spec=spec,
        statistic=tau,
        p_value=pval,
        critical_values=cvs,
        lags_used=p,
        detected=detected,
        notes=[N.UNIT_ROOT] if detected else [],
    )


# ---------------------------------------------------------------------------
# KPSS
# ---------------------------------------------------------------------------

def kpss_test(
    ts: TimeSeries, spec: TrendSpec = TrendSpec.CONSTANT_ONLY, alpha: float = 0.05
) -> UnitRootResult:
    """KPSS stationarity test with a Bartlett long-run variance.

    Null is stationarity, so detected (= non-stationary) when the interpolated
    p-value bound drops below alpha, equivalently statistic > cv(alpha).
    """
    y = ts.values
    n = ts.n
    cols = [np.ones(n)]
    if spec is TrendSpec.CONSTANT_TREND:
        cols.append(np.arange(n, dtype=np.float64))
    fit = ols_fit(np.column_stack(cols), y)
    u = fit.residuals
    lag = min(schwert_maxlag(n), n - 1)

    # An exact deterministic fit leaves only rounding noise; the statistic is 0
    # by construction rather than a ratio of noise terms.
    tss = float(np.sum((y - y.mean()) ** 2))
    if fit.ssr <= 1e-18 * max(tss, 1.0):
        stat = 0.0
    else:
        s2 = newey_west_lrv(u, lag)
        if s2 <= 0.0:
            raise TestSkipped("kpss long-run variance is zero")
        partial = np.cumsum(u)
        stat = float(partial @ partial) / (n * n * s2)

    pval = kpss_pvalue(stat, spec)
    detected = pval < alpha
    result_notes = [N.KPSS_PVALUE_BOUND]
    if detected:
        result_notes.append(N.KPSS_REJECTED)
    return UnitRootResult(
        test_id="kpss",
        spec=spec,
        statistic=stat,
        p_value=pval,
        critical_values=kpss_critical_values(spec),
        lags_used=lag,
        detected=detected,
        notes=result_notes,
    )


# ---------------------------------------------------------------------------
# Phillips-Perron
# ---------------------------------------------------------------------------

def pp_test(
    ts: TimeSeries,
    spec: TrendSpec = TrendSpec.CONSTANT_ONLY,
    alpha: float = 0.05,
    lags: int | None = None,
) -> UnitRootResult:
    """Phillips-Perron Z_tau test.

    The lag-1 levels regression is corrected nonparametrically with a Bartlett
    long-run variance at bandwidth floor(4 * (n/100)^(2/9)) unless ``lags``
    overrides it. detected when p_value >= alpha.
    """
    n = ts.n
    if n < PP_MIN_N:
        raise TooShort(f"phillips-perron needs n >= {PP_MIN_N}, got {n}")
    y = ts.values
    endog = y[1:]
    cols = [np.ones(n - 1)]
    if spec is TrendSpec.CONSTANT_TREND:
        cols.append(np.arange(1, n, dtype=np.float64))
    cols.append(y[:-1])
    try:
        fit = ols_fit(np.column_stack(cols), endog)
    except RankDeficient as exc:
        raise TestSkipped(f"phillips-perron regression is degenerate: {exc}") from exc

    idx = spec.n_deterministic
    rho = float(fit.coefficients[idx])
    se = float(fit.stderr[idx])
    u = fit.residuals
    neff = n - 1
    gamma0 = float(u @ u) / neff
    s = math.sqrt(fit.sigma2)
    bandwidth = int(math.floor(4.0 * (n / 100.0) ** (2.0 / 9.0))) if lags is None else lags
    lam2 = newey_west_lrv(u, min(bandwidth, neff - 1))
    if lam2 <= 0.0 or se == 0.0:
        raise TestSkipped("phillips-perron long-run variance is zero")

    tau = (rho - 1.0) / se
    stat = math.sqrt(gamma0 / lam2) * tau - (lam2 - gamma0) * neff * se / (
        2.0 * math.sqrt(lam2) * s
    )
    pval = adf_pvalue(stat, spec)
    detected = pval >= alpha
    return UnitRootResult(
        test_id="pp",
        spec=spec,
        statistic=stat,
        p_value=pval,
        critical_values=adf_critical_values(spec, neff),
        lags_used=bandwidth,
        detected=detected,
        notes=[N.UNIT_ROOT] if detected else [],
    )


# ---------------------------------------------------------------------------
# Zivot-Andrews, model A (intercept break)
# ---------------------------------------------------------------------------

def za_candidate_range(n: int) -> range:
    """Break candidates: positions b with floor(0.15 n) <= b < n - floor(0.15 n)."""
    trim = int(math.floor(0.15 * n))
    return range(trim, n - trim)


def _za_search(y: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """t(gamma) for every feasible break candidate.

    The fixed regressors (constant, trend, dy lags) are partialled out once via
    QR; the break dummy is a step function, so each candidate's projections are
    suffix sums. Exactly equivalent to refitting the full regression per
    candidate. Returns (candidates, tstats).
    """
    n = y.shape[0]
    dy = np.diff(y)
    m = n - 1 - p
    endog = dy[p:]
    x = y[p : n - 1]
    cols = [np.ones(m), np.arange(p + 1, n, dtype=np.float64)]
    for i in range(1, p + 1):
        cols.append(dy[p - i : n - 1 - i])
    G0 = np.column_stack(cols)
    k0 = G0.shape[1]
    df = m - (k0 + 2)
    if df < 2:
        raise TooShort(f"too few observations for the break search (df={df})")

    Q0, R0 = np.linalg.qr(G0)
    rdiag = np.abs(np.diag(R0))
    if float(rdiag.min()) <= m * np.finfo(np.float64).eps * float(rdiag.max()):
        raise TestSkipped("zivot-andrews base regression is degenerate")
    r_y = endog - Q0 @ (Q0.T @ endog)
    r_x = x - Q0 @ (Q0.T @ x)
    syy = float(r_y @ r_y)
    sxx = float(r_x @ r_x)
    sxy = float(r_x @ r_y)
    if sxx <= 0.0 or syy <= 0.0:
        raise TestSkipped("zivot-andrews regression has no residual variation")

    # suffix sums over rows j >= jb; suf[m] = 0
    suf_ry = np.concatenate([np.cumsum(r_y[::-1])[::-1], [0.0]])
    suf_rx = np.concatenate([np.cumsum(r_x[::-1])[::-1], [0.0]])
    suf_q = np.vstack([np.cumsum(Q0[::-1], axis=0)[::-1], np.zeros(k0)])

    # dummy d_t = 1{t > b} is nonconstant over rows only for p+1 <= b <= n-2
    cands = np.array([b for b in za_candidate_range(n) if p + 1 <= b <= n - 2], dtype=np.int64)
    if cands.size == 0:
        raise TooShort("no feasible break candidates inside the trimmed range")
    jb = cands - p  # first row index with d = 1

    ndd = (m - jb).astype(np.float64)
    dd_r = ndd - (suf_q[jb] * suf_q[jb]).sum(axis=1)
    dx = suf_rx[jb]
    dyv = suf_ry[jb]
    det = sxx * dd_r - dx * dx
    with np.errstate(divide="ignore", invalid="ignore"):
        gamma = (dd_r * sxy - dx * dyv) / det
        theta = (sxx * dyv - dx * sxy) / det
        ssr = syy - gamma * sxy - theta * dyv
        sigma2 = ssr / df
        var_gamma = sigma2 * dd_r / det
        tstats = gamma / np.sqrt(var_gamma)
    bad = (dd_r <= 1e-10 * ndd) | (det <= 1e-12 * sxx * np.maximum(dd_r, 1e-300))
    bad |= ~np.isfinite(tstats)
    tstats = np.where(bad, np.inf, tstats)
    if not np.isfinite(tstats).any():
        raise TestSkipped("zivot-andrews search found no estimable candidate")
    return cands, tstats


def zivot_andrews_test(ts: TimeSeries, alpha: float = 0.05) -> UnitRootResult:
    """Minimum-t unit-root test allowing one intercept break at an unknown date.

    The augmentation order is selected once by the ADF rule under the
    constant+trend spec. detected (= unit root not rejected even with a break
    allowed) when the minimum t statistic is above the critical value.
    """
    n = ts.n
    if n < ZA_MIN_N:
        raise TooShort(f"zivot-andrews needs n >= {ZA_MIN_N}, got {n}")
    y = ts.values
    try:
        p = select_adf_lag(y, TrendSpec.CONSTANT_TREND)
    except RankDeficient as exc:
        raise TestSkipped(f"zivot-andrews lag selection is degenerate: {exc}") from exc
    cands, tstats = _za_search(y, p)
    imin = int(np.argmin(tstats))
    stat = float(tstats[imin])
    cvs = za_critical_values()
    detected = stat > cv_at(cvs, alpha)
    result_notes = [N.ZA_CAVEAT]
    if detected:
        result_notes.append(N.UNIT_ROOT)
    return UnitRootResult(
        test_id="zivot_andrews",
        spec=TrendSpec.CONSTANT_TREND,
        statistic=stat,
        p_value=None,
        critical_values=cvs,
        lags_used=p,
        detected=detected,
        notes=result_notes,
        break_index=int(cands[imin]),
    )


# ---------------------------------------------------------------------------
# combined diagnosis
# ---------------------------------------------------------------------------

_EXPECTED_BATTERY = {
    ("adf", TrendSpec.CONSTANT_ONLY),
    ("adf", TrendSpec.CONSTANT_TREND),
    ("kpss", TrendSpec.CONSTANT_ONLY),
    ("kpss", TrendSpec.CONSTANT_TREND),
    ("pp", TrendSpec.CONSTANT_ONLY),
    ("pp", TrendSpec.CONSTANT_TREND),
    ("zivot_andrews", TrendSpec.CONSTANT_TREND),
}


def classify_trend(results: list[UnitRootResult]) -> TrendDiagnosis:
    """Fold the seven trend-battery results into one label.

    Decision table (reject = evidence against the test's own null):
      1. ADF(c) rejects and KPSS(c) does not         -> STATIONARY
      2. ADF(c) does not, ADF(ct) rejects,
         KPSS(ct) does not                            -> DETERMINISTIC_TREND
      3. neither ADF rejects and both KPSS reject     -> UNIT_ROOT,
         unless Zivot-Andrews rejects                 -> STRUCTURAL_BREAK
      4. anything else                                -> INCONCLUSIVE

    Requires exactly the seven battery results (WrongResultSet otherwise).
    Phillips-Perron does not vote; disagreement with ADF only adds a note.
    """
    seen = {}
    for r in results:
        key = (r.test_id, r.spec)
        if key in seen:
            raise WrongResultSet(f"duplicate result for {key}")
        seen[key] = r
    if set(seen) != _EXPECTED_BATTERY:
        missing = _EXPECTED_BATTERY - set(seen)
        extra = set(seen) - _EXPECTED_BATTERY
        raise WrongResultSet(f"missing={sorted(missing)} unexpected={sorted(extra)}")

    adf_c = seen[("adf", TrendSpec.CONSTANT_ONLY)]
    adf_ct = seen[("adf", TrendSpec.CONSTANT_TREND)]
    kpss_c = seen[("kpss", TrendSpec.CONSTANT_ONLY)]
    kpss_ct = seen[("kpss", TrendSpec.CONSTANT_TREND)]
    pp_c = seen[("pp", TrendSpec.CONSTANT_ONLY)]
    pp_ct = seen[("pp", TrendSpec.CONSTANT_TREND)]
    za = seen[("zivot_andrews", TrendSpec.CONSTANT_TREND)]

    adf_c_rej = not adf_c.detected
    adf_ct_rej = not adf_ct.detected
    kpss_c_rej = kpss_c.detected
    kpss_ct_rej = kpss_ct.detected
    za_rej = not za.detected

    diag_notes: list[str] = []
    if pp_c.detected != adf_c.detected:
        diag_notes.append(N.adf_pp_disagreement(TrendSpec.CONSTANT_ONLY.label))
    if pp_ct.detected != adf_ct.detected:
        diag_notes.append(N.adf_pp_disagreement(TrendSpec.CONSTANT_TREND.label))

    if adf_c_rej and not kpss_c_rej:
        label = TrendLabel.STATIONARY
        explanation = (
            "ADF rejects a unit root and KPSS does not reject level "
            "stationarity under the constant-only specification."
        )
    elif (not adf_c_rej) and adf_ct_rej and not kpss_ct_rej:
        label = TrendLabel.DETERMINISTIC_TREND
        explanation = (
            "ADF rejects a unit root only once a linear trend is included, and "
            "KPSS does not reject stationarity around that trend."
        )
        diag_notes.append(N.DETERMINISTIC_TREND)
    elif (not adf_c_rej) and (not adf_ct_rej) and kpss_c_rej and kpss_ct_rej:
        if za_rej and za.break_index is not None:
            label = TrendLabel.STRUCTURAL_BREAK
            explanation = (
                "ADF and KPSS point at a unit root, but allowing one intercept "
                f"break at index {za.break_index} restores rejection; a break "
                "is the more likely explanation."
            )
            diag_notes.append(N.structural_break(za.break_index))
        else:
            label = TrendLabel.UNIT_ROOT
            explanation = (
                "Neither ADF specification rejects a unit root and both KPSS "
                "specifications reject stationarity."
            )
            diag_notes.append(N.UNIT_ROOT)
    else:
        label = TrendLabel.INCONCLUSIVE
        reads = (
            f"ADF rejects: constant-only={adf_c_rej}, constant-trend={adf_ct_rej}; "
            f"KPSS rejects: constant-only={kpss_c_rej}, constant-trend={kpss_ct_rej}; "
            f"Zivot-Andrews rejects: {za_rej}"
        )
        explanation = f"The battery does not match any decision rule ({reads})."

    return TrendDiagnosis(label=label, explanation=explanation, notes=diag_notes)
