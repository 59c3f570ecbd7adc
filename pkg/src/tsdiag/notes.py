"""Catalog of every human-readable note the battery can emit.

Keeping the strings in one table makes report output stable across releases
and lets tests pin exact wording. Formatting helpers exist for the notes that
embed a label or index.
"""

from __future__ import annotations

# trend
UNIT_ROOT = "Unit root detected - consider differencing"
DETERMINISTIC_TREND = "Deterministic trend detected - stationary after detrending"
KPSS_PVALUE_BOUND = "p-value is an interpolated bound"
KPSS_REJECTED = "Stationarity null rejected - see the trend diagnosis for the likely cause"
ZA_CAVEAT = (
    "may flag a break in smooth trends; "
    "inspect the series around the reported index"
)

# variance
VARIANCE_CHANGE = "Variance instability detected - consider a variance-stabilizing transform"
ARCH_DETECTED = "Conditional heteroskedasticity detected - consider modeling volatility"
ARCH_CAVEAT = (
    "strong autocorrelation in levels can trigger this test; "
    "read it alongside the trend battery"
)
BARTLETT_NORMALITY = "sensitive to non-normal data; read alongside the Levene row"
VARIANCE_RATIO_SCOPE = "targets monotone variance drift between the first and last thirds"

# seasonality
FREQUENCY_UNKNOWN = "frequency unknown — seasonality tests skipped"


def adf_pp_disagreement(spec_label: str) -> str:
    return (
        f"ADF and Phillips-Perron disagree under the {spec_label} specification; "
        "the verdict is sensitive to the serial-correlation correction"
    )


def structural_break(index: int) -> str:
    return (
        f"Structural break candidate at index {index} - "
        "consider segmenting the series or adding a break dummy"
    )


def seasonality_detected(label: str) -> str:
    return f"{label.capitalize()} seasonality detected - consider seasonal differencing or adjustment"


def seasonal_strength_label(label: str) -> str:
    return f"strength of the {label} cycle component"


def no_periods(reason: str) -> str:
    return f"no seasonal periods to test ({reason})"
