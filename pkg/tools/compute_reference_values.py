"""Offline oracle: freeze reference statistics for the equivalence tests.

Run once in a dev environment (statsmodels 0.14.6, scipy 1.15.3) and paste the
printed dict into tests/test_acceptance.py. The shipped test suite never
imports statsmodels; it compares the package against these frozen constants.

Reference routes, independent of the package internals:
  - adf: statsmodels.tsa.stattools.adfuller (autolag='AIC', maxlag pinned)
  - kpss: statsmodels.tsa.stattools.kpss (nlags pinned to the Schwert value)
  - pp: statsmodels OLS + textbook Bartlett-weight correction (the `arch`
    package is not on the mirror; this is the same published formula)
  - levene / bartlett: scipy.stats on the same contiguous halves
  - arch_lm: statsmodels.stats.diagnostic.het_arch on the demeaned series
  - kruskal_wallis: scipy.stats.kruskal on CMA-detrended phase groups,
    with the CMA re-derived here rather than imported from the package
"""

import math

import numpy as np
import statsmodels.api as sm
from scipy import stats
from statsmodels.stats.diagnostic import het_arch
from statsmodels.tsa.stattools import adfuller, kpss

from tsdiag import SynthSpec, generate

FIXTURES = {
    "white_noise": SynthSpec(n=500, seed=42),
    "random_walk": SynthSpec(n=500, seed=42, unit_root=True),
    "trend_seasonal": SynthSpec(
        n=420, seed=42, baseline=10.0, trend_slope=0.02,
        seasonal_amplitude=2.0, seasonal_period=7, noise_sigma=0.5,
    ),
    "variance_break": SynthSpec(n=400, seed=42, variance_break=(0.5, 2.0)),
    "arch": SynthSpec(n=600, seed=42, arch=(0.2, 0.5)),
}


def schwert(n: int) -> int:
    return int(math.floor(12.0 * (n / 100.0) ** 0.25))


def pp_reference(y: np.ndarray, trend: str) -> float:
    n = len(y)
    endog = y[1:]
    cols = [np.ones(n - 1)]
    if trend == "ct":
        cols.append(np.arange(1, n, dtype=float))
    cols.append(y[:-1])
    res = sm.OLS(endog, np.column_stack(cols)).fit()
    rho, se = res.params[-1], res.bse[-1]
    u = res.resid
    neff = n - 1
    gamma0 = float(u @ u) / neff
    s = math.sqrt(res.ssr / res.df_resid)
    lag = int(math.floor(4.0 * (n / 100.0) ** (2.0 / 9.0)))
    lam2 = gamma0 + 2.0 * sum(
        (1.0 - j / (lag + 1.0)) * float(u[j:] @ u[:-j]) / neff for j in range(1, lag + 1)
    )
    tau = (rho - 1.0) / se
    return float(math.sqrt(gamma0 / lam2) * tau - (lam2 - gamma0) * neff * se / (2.0 * math.sqrt(lam2) * s))


def cma(x: np.ndarray, window: int) -> np.ndarray:
    if window % 2 == 1:
        taps = np.full(window, 1.0 / window)
    else:
        taps = np.full(window + 1, 1.0 / window)
        taps[0] = taps[-1] = 0.5 / window
    num = np.convolve(x, taps, mode="same")
    den = np.convolve(np.ones_like(x), taps, mode="same")
    return num / den


def main() -> None:
    out = {}
    for name, spec in FIXTURES.items():
        v = generate(spec).values
        n = len(v)
        maxlag = min(schwert(n), n - 13, (n - 5) // 2)
        maxlag_ct = min(schwert(n), n - 13, (n - 6) // 2)
        row = {}
        row["adf_c"] = float(adfuller(v, maxlag=maxlag, regression="c", autolag="AIC")[0])
        row["adf_ct"] = float(adfuller(v, maxlag=maxlag_ct, regression="ct", autolag="AIC")[0])
        row["kpss_c"] = float(kpss(v, regression="c", nlags=min(schwert(n), n - 1))[0])
        row["kpss_ct"] = float(kpss(v, regression="ct", nlags=min(schwert(n), n - 1))[0])
        row["pp_c"] = pp_reference(v, "c")
        row["pp_ct"] = pp_reference(v, "ct")
        half = n // 2
        segs = [v[: half + n % 2], v[half + n % 2 :]]
        row["levene"] = float(stats.levene(*segs, center="median").statistic)
        row["bartlett"] = float(stats.bartlett(*segs).statistic)
        q = min(10, n // 20)
        row["arch_lm"] = float(het_arch(v - v.mean(), nlags=q)[0])
        detr = v - cma(v, 7)
        row["kruskal_wallis"] = float(stats.kruskal(*[detr[k::7] for k in range(7)]).statistic)
        out[name] = row

    print("REFERENCE_STATS = {")
    for name, row in out.items():
        print(f'    "{name}": {{')
        for key, val in row.items():
            print(f'        "{key}": {val!r},')
        print("    },")
    print("}")


if __name__ == "__main__":
    main()
