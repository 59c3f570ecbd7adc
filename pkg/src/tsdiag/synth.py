"""Deterministic synthetic series for tests, calibration, and the CLI.

Randomness comes from a counter-based generator: draw i of stream s under seed
q is a pure function mix64(state(q, s) + (i+1) * GOLDEN), with mix64 the
SplitMix64 finalizer. Identical specs therefore produce identical series on
every platform and process, with no global state. Normals are produced by
Box-Muller on consecutive uniform pairs.

Generator model, in order of assembly:

    shocks    xi_t: N(0, sigma^2) draws; a variance_break=(frac, mult)
              multiplies the shock scale from position floor(frac * n) on
              (under arch it scales the standardized z stream instead).
    noise     e_t = xi_t (iid), cumsum(xi) (unit_root), or the ARCH(1)
              recursion e_t = z_t * sqrt(omega + alpha1 * e_{t-1}^2).
    values    y_t = baseline + trend_slope * t
              + seasonal_amplitude * sin(2 pi t / seasonal_period)
              + level_break shift for t >= floor(frac * n)
              + e_t

Timestamps start 2020-01-01T00:00:00Z with a fixed spacing per frequency kind
(30-day months, 91-day quarters, 365-day years); the UNKNOWN kind produces a
deterministic irregular grid whose median spacing matches no band.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadSpec
from .series import MIN_LENGTH, FrequencyKind, TimeSeries, from_records

__all__ = ["SynthSpec", "generate", "uniforms", "normals"]

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

EPOCH_2020 = 1577836800.0  # 2020-01-01T00:00:00Z

_SPACING = {
    FrequencyKind.HOURLY: 3600.0,
    FrequencyKind.DAILY: 86400.0,
    FrequencyKind.WEEKLY: 604800.0,
    FrequencyKind.MONTHLY: 30.0 * 86400.0,
    FrequencyKind.QUARTERLY: 91.0 * 86400.0,
    FrequencyKind.YEARLY: 365.0 * 86400.0,
}


def _mix64(x: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2^64 by design
    with np.errstate(over="ignore"):
        x = x.astype(np.uint64)
        x ^= x >> np.uint64(30)
        x *= _MIX1
        x ^= x >> np.uint64(27)
        x *= _MIX2
        x ^= x >> np.uint64(31)
        return x


def _raw(seed: int, count: int, stream: int) -> np.ndarray:
    base = (seed & 0xFFFFFFFFFFFFFFFF) ^ ((0x9E3779B97F4A7C15 * (stream + 1)) & 0xFFFFFFFFFFFFFFFF)
    state = _mix64(np.array([base], dtype=np.uint64))[0]
    idx = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix64(state + idx * _GOLDEN)


def uniforms(seed: int, count: int, stream: int = 0) -> np.ndarray:
    """Deterministic uniforms in [0, 1): top 53 bits of the mixed counter."""
    return (_raw(seed, count, stream) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def normals(seed: int, count: int, stream: int = 0) -> np.ndarray:
    """Deterministic standard normals via Box-Muller on uniform pairs."""
    pairs = (count + 1) // 2
    raw1 = _raw(seed, pairs, 2 * stream)
    raw2 = _raw(seed, pairs, 2 * stream + 1)
    # u1 in (0, 1] so log(u1) is finite
    u1 = ((raw1 >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
    u2 = (raw2 >> np.uint64(11)).astype(np.float64) * 2.0**-53
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:count]


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for one deterministic synthetic series."""

    n: int
    freq_kind: FrequencyKind = FrequencyKind.DAILY
    baseline: float = 0.0
    trend_slope: float = 0.0
    seasonal_amplitude: float = 0.0
    seasonal_period: int = 7
    noise_sigma: float = 1.0
    unit_root: bool = False
    variance_break: tuple[float, float] | None = None  # (fraction, multiplier)
    level_break: tuple[float, float] | None = None     # (fraction, shift)
    arch: tuple[float, float] | None = None            # (omega, alpha1)
    seed: int = 0

    def validate(self) -> None:
        if self.n < MIN_LENGTH:
            raise BadSpec(f"n must be >= {MIN_LENGTH}, got {self.n}")
        if self.noise_sigma < 0:
            raise BadSpec("noise_sigma must be >= 0")
        if self.seasonal_amplitude != 0 and self.seasonal_period < 2:
            raise BadSpec("seasonal_period must be >= 2 when an amplitude is set")
        if self.unit_root and self.arch is not None:
            raise BadSpec("unit_root and arch are mutually exclusive")
        for name, pair in (("variance_break", self.variance_break), ("level_break", self.level_break)):
            if pair is not None and not 0.0 < pair[0] < 1.0:
                raise BadSpec(f"{name} fraction must be inside (0, 1)")
        if self.variance_break is not None and self.variance_break[1] <= 0:
            raise BadSpec("variance_break multiplier must be > 0")
        if self.arch is not None:
            omega, alpha1 = self.arch
            if omega <= 0 or not 0.0 <= alpha1 < 1.0:
                raise BadSpec("arch needs omega > 0 and 0 <= alpha1 < 1")


def _timestamps(spec: SynthSpec) -> np.ndarray:
    if spec.freq_kind is FrequencyKind.UNKNOWN:
        # deterministic irregular grid: spacings cycle 1.5, 2.5, 3.5 days
        gaps = 86400.0 * (1.5 + (np.arange(spec.n - 1) % 3))
        return EPOCH_2020 + np.concatenate([[0.0], np.cumsum(gaps)])
    step = _SPACING[spec.freq_kind]
    return EPOCH_2020 + step * np.arange(spec.n)


def generate(spec: SynthSpec) -> TimeSeries:
    """Build the series described by ``spec``; same spec, same bits, always."""
    spec.validate()
    n = spec.n
    t = np.arange(n, dtype=np.float64)
    z = normals(spec.seed, n)

    if spec.variance_break is not None:
        frac, mult = spec.variance_break
        z = z.copy()
        z[int(np.floor(frac * n)):] *= mult

    if spec.arch is not None:
        omega, alpha1 = spec.arch
        e = np.empty(n)
        prev = 0.0
        for i in range(n):
            prev = z[i] * np.sqrt(omega + alpha1 * prev * prev)
            e[i] = prev
    elif spec.unit_root:
        e = np.cumsum(spec.noise_sigma * z)
    else:
        e = spec.noise_sigma * z

    y = spec.baseline + spec.trend_slope * t + e
    if spec.seasonal_amplitude != 0.0:
        y = y + spec.seasonal_amplitude * np.sin(2.0 * np.pi * t / spec.seasonal_period)
    if spec.level_break is not None:
        frac, shift = spec.level_break
        y = y + shift * (t >= np.floor(frac * n))

    return from_records(_timestamps(spec), y)
