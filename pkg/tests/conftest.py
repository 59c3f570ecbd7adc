"""Shared fixtures and deterministic data helpers for the test suite."""
import numpy as np

from tsdiag.series import TimeSeries, from_records
from tsdiag.synth import normals

EPOCH = 1577836800.0  # 2020-01-01T00:00:00Z
DAY = 86400.0


def daily_ts(values) -> TimeSeries:
    """Wrap a value array in a daily-spaced TimeSeries starting 2020-01-01."""
    values = np.asarray(values, dtype=float)
    stamps = EPOCH + DAY * np.arange(values.size)
    return from_records(stamps.tolist(), values.tolist())


def ar1_series(seed: int, n: int, phi: float, sigma: float = 1.0,
               stream: int = 0) -> np.ndarray:
    """AR(1) recursion x_t = phi*x_{t-1} + sigma*e_t from the portable stream."""
    e = normals(seed, n, stream=stream)
    x = np.empty(n)
    x[0] = sigma * e[0]
    for t in range(1, n):
        x[t] = phi * x[t - 1] + sigma * e[t]
    return x


def t3_noise(seed: int, n: int) -> np.ndarray:
    """Student-t with 3 df: z0 / sqrt((z1^2+z2^2+z3^2)/3), heavy tails."""
    z0 = normals(seed, n, stream=0)
    z1 = normals(seed, n, stream=1)
    z2 = normals(seed, n, stream=2)
    z3 = normals(seed, n, stream=3)
    return z0 / np.sqrt((z1 ** 2 + z2 ** 2 + z3 ** 2) / 3.0)
