"""Shared error taxonomy for the diagnostics toolkit.

Every exception raised by this package derives from :class:`DiagnosticsError`,
so callers can catch one type at the battery boundary. ``TestSkipped`` and its
subclasses are the "soft" failures: a single test refusing to run on degenerate
input. The battery converts them into skipped report rows instead of aborting.
"""

from __future__ import annotations


class DiagnosticsError(Exception):
    """Base class for all errors raised by tsdiag."""


# ---------------------------------------------------------------------------
# series construction / validation
# ---------------------------------------------------------------------------

class LengthMismatch(DiagnosticsError):
    """Timestamp and value arrays have different lengths."""


class TooShort(DiagnosticsError):
    """Series (or segment) is shorter than the operation requires."""


class NonMonotonicIndex(DiagnosticsError):
    """Timestamps are not strictly increasing."""


class NonFiniteValue(DiagnosticsError):
    """A value is NaN or infinite; message reports the first offending position."""


# ---------------------------------------------------------------------------
# regression kernel
# ---------------------------------------------------------------------------

class DimensionMismatch(DiagnosticsError):
    """Design matrix and response have incompatible shapes."""


class RankDeficient(DiagnosticsError):
    """Design matrix is numerically rank deficient."""


class LagTooLarge(DiagnosticsError):
    """Requested lag order leaves no usable observations."""


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

class BadK(DiagnosticsError):
    """Invalid segment count for variance splitting."""


class BadPeriod(DiagnosticsError):
    """Seasonal period out of range for the operation."""


class BadSpec(DiagnosticsError):
    """Invalid synthetic-generator or detection configuration."""


class WrongResultSet(DiagnosticsError):
    """classify_trend received a result set that is not the expected battery."""


class FileWriteError(DiagnosticsError):
    """Report artifact could not be written."""


# ---------------------------------------------------------------------------
# soft skips (degenerate inputs)
# ---------------------------------------------------------------------------

class TestSkipped(DiagnosticsError):
    """A single test cannot run on this input; carries the human-readable reason."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class DegenerateSegment(TestSkipped):
    """A segment has zero spread, so the within-group mean square vanishes."""


class ZeroVariance(TestSkipped):
    """A sample variance required by the statistic is zero."""


class DegenerateVariance(TestSkipped):
    """Variance of the decomposed components is zero; strength ratio undefined."""


class AllTied(TestSkipped):
    """All observations are tied; rank statistics are undefined."""
