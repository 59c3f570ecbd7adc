"""Validated time-series container, frequency inference, and seasonal candidates.

The container is deliberately dumb: an immutable pair of arrays (epoch seconds,
float64 values) validated once at construction. Everything downstream assumes a
clean series and never re-checks monotonicity or finiteness.

Frequency inference is banded: the median spacing in seconds is matched against
inclusive windows around the common sampling grids (hour/day/week and calendar
month/quarter/year). A median outside every band yields ``UNKNOWN``, which the
battery treats as "skip seasonality", never as an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import LengthMismatch, NonFiniteValue, NonMonotonicIndex, TooShort

MIN_LENGTH = 20


class FrequencyKind(Enum):
    HOURLY = "hourly"
    DAILY = "daily"
    WEEKLY = "weekly"
    MONTHLY = "monthly"
    QUARTERLY = "quarterly"
    YEARLY = "yearly"
    UNKNOWN = "unknown"


# Inclusive [lo, hi] bands in seconds: +-5% around the fixed grids, calendar
# ranges for month/quarter/year.
_DAY = 86400.0
_BANDS: list[tuple[FrequencyKind, float, float]] = [
    (FrequencyKind.HOURLY, 3600.0 * 0.95, 3600.0 * 1.05),
    (FrequencyKind.DAILY, _DAY * 0.95, _DAY * 1.05),
    (FrequencyKind.WEEKLY, 7 * _DAY * 0.95, 7 * _DAY * 1.05),
    (FrequencyKind.MONTHLY, 28 * _DAY, 31 * _DAY),
    (FrequencyKind.QUARTERLY, 89 * _DAY, 93 * _DAY),
    (FrequencyKind.YEARLY, 360 * _DAY, 370 * _DAY),
]

# Candidate seasonal cycle lengths per sampling frequency, ordered short to long.
_PERIOD_CANDIDATES: dict[FrequencyKind, list[tuple[int, str]]] = {
    FrequencyKind.HOURLY: [(24, "daily"), (168, "weekly")],
    FrequencyKind.DAILY: [(7, "weekly"), (30, "monthly"), (365, "yearly")],
    FrequencyKind.WEEKLY: [(52, "yearly")],
    FrequencyKind.MONTHLY: [(12, "yearly")],
    FrequencyKind.QUARTERLY: [(4, "yearly")],
    FrequencyKind.YEARLY: [],
    FrequencyKind.UNKNOWN: [],
}


@dataclass(frozen=True)
class Frequency:
    """Inferred sampling frequency: band kind plus the raw median spacing."""

    kind: FrequencyKind
    median_spacing: float  # seconds


@dataclass(frozen=True)
class SeasonalPeriod:
    """One seasonal cycle to test: length in observations plus a human label."""

    period: int
    label: str


@dataclass(frozen=True)
class TimeSeries:
    """Immutable, validated univariate series.

    ``timestamps`` are epoch seconds (UTC, float64, strictly increasing);
    ``values`` are finite float64. Both arrays are set read-only so shared
    instances are safe to pass around.
    """

    timestamps: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def start(self) -> datetime:
        return datetime.fromtimestamp(float(self.timestamps[0]), tz=timezone.utc)

    @property
    def end(self) -> datetime:
        return datetime.fromtimestamp(float(self.timestamps[-1]), tz=timezone.utc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return np.array_equal(self.timestamps, other.timestamps) and np.array_equal(
            self.values, other.values
        )


def _epoch_seconds(obj) -> float:
    """Coerce one timestamp-like object to epoch seconds (naive datetimes = UTC)."""
    if isinstance(obj, (bool,)):
        raise TypeError(f"unsupported timestamp type: {type(obj).__name__}")
    if isinstance(obj, (int, float, np.integer, np.floating)):
        return float(obj)
    if isinstance(obj, np.datetime64):
        return float(obj.astype("datetime64[us]").astype(np.int64)) / 1e6
    if isinstance(obj, datetime):
        if obj.tzinfo is None:
            obj = obj.replace(tzinfo=timezone.utc)
        return obj.timestamp()
    if isinstance(obj, date):
        return datetime(obj.year, obj.month, obj.day, tzinfo=timezone.utc).timestamp()
    if isinstance(obj, str):
        return parse_timestamp(obj)
    raise TypeError(f"unsupported timestamp type: {type(obj).__name__}")


def parse_timestamp(text: str) -> float:
    """Parse an ISO-8601 string to epoch seconds; trailing 'Z' accepted, naive = UTC."""
    s = text.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    dt = datetime.fromisoformat(s)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def from_records(timestamps: Sequence | np.ndarray, values: Iterable[float] | np.ndarray) -> TimeSeries:
    """Build a validated :class:`TimeSeries`.

    Accepts timestamps as datetimes (naive treated as UTC), ISO-8601 strings,
    ``numpy.datetime64``, or raw epoch seconds. Raises :class:`LengthMismatch`,
    :class:`TooShort` (n < 20), :class:`NonMonotonicIndex`, or
    :class:`NonFiniteValue` (message names the first offending position).
    """
    vals = np.asarray(values, dtype=np.float64)
    if vals.ndim != 1:
        vals = vals.reshape(-1)

    if isinstance(timestamps, np.ndarray) and np.issubdtype(timestamps.dtype, np.datetime64):
        ts = timestamps.astype("datetime64[us]").astype(np.int64).astype(np.float64) / 1e6
    elif isinstance(timestamps, np.ndarray) and np.issubdtype(timestamps.dtype, np.number):
        ts = timestamps.astype(np.float64)
    else:
        ts = np.array([_epoch_seconds(t) for t in timestamps], dtype=np.float64)

    if ts.shape[0] != vals.shape[0]:
        raise LengthMismatch(f"{ts.shape[0]} timestamps vs {vals.shape[0]} values")
    n = vals.shape[0]
    if n < MIN_LENGTH:
        raise TooShort(f"need at least {MIN_LENGTH} observations, got {n}")
    # NaN timestamps fail this check too: comparisons with NaN are False.
    if not bool(np.all(np.diff(ts) > 0)):
        raise NonMonotonicIndex("timestamps must be strictly increasing")
    finite = np.isfinite(vals)
    if not bool(finite.all()):
        pos = int(np.argmin(finite))
        raise NonFiniteValue(f"non-finite value at position {pos}")

    ts.flags.writeable = False
    vals.flags.writeable = False
    return TimeSeries(timestamps=ts, values=vals)


def infer_frequency(ts: TimeSeries) -> Frequency:
    """Classify the sampling frequency from the median inter-observation spacing."""
    spacing = float(np.median(np.diff(ts.timestamps)))
    for kind, lo, hi in _BANDS:
        if lo <= spacing <= hi:
            return Frequency(kind=kind, median_spacing=spacing)
    return Frequency(kind=FrequencyKind.UNKNOWN, median_spacing=spacing)


def candidate_periods(freq: Frequency, n: int) -> list[SeasonalPeriod]:
    """Seasonal cycles worth testing at this frequency and length.

    A cycle is kept only when the series covers at least three full periods
    (n >= 3 * period). Unknown frequency yields an empty list.
    """
    out = []
    for period, label in _PERIOD_CANDIDATES[freq.kind]:
        if n >= 3 * period:
            out.append(SeasonalPeriod(period=period, label=label))
    return out
