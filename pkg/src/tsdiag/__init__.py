"""tsdiag: stationarity diagnostics for univariate time series.

A fixed battery of ten tests across three failure modes of stationarity
(trend, variance, seasonality), a combined trend diagnosis, and report
rendering to markdown and CSV/JSON tables. See ``detect_all`` for the
one-call entry point and the ``tsdiag`` CLI for file-based use.
"""

from .errors import (
    AllTied,
    BadK,
    BadPeriod,
    BadSpec,
    DegenerateSegment,
    DegenerateVariance,
    DiagnosticsError,
    DimensionMismatch,
    FileWriteError,
    LagTooLarge,
    LengthMismatch,
    NonFiniteValue,
    NonMonotonicIndex,
    RankDeficient,
    TestSkipped,
    TooShort,
    WrongResultSet,
    ZeroVariance,
)
from .regression import LinearFit, TrendSpec, newey_west_lrv, ols_fit, schwert_maxlag, select_adf_lag
from .report import (
    DetectConfig,
    DiagnosticsReport,
    TestResult,
    Verdict,
    detect_all,
    summarize,
    table_from_csv,
    table_to_csv,
    table_to_json,
    to_markdown,
    to_table,
)
from .seasonality import (
    SeasonalityResult,
    detect_seasonality,
    kruskal_wallis_seasonal,
    seasonal_strength,
)
from .series import (
    Frequency,
    FrequencyKind,
    SeasonalPeriod,
    TimeSeries,
    candidate_periods,
    from_records,
    infer_frequency,
)
from .stl import Decomposition, centered_moving_average, periodic_means_decompose, stl_decompose
from .synth import SynthSpec, generate, normals, uniforms
from .trend import (
    TrendDiagnosis,
    TrendLabel,
    UnitRootResult,
    adf_test,
    classify_trend,
    kpss_test,
    pp_test,
    zivot_andrews_test,
)
from .variance import (
    VarianceResult,
    arch_lm_test,
    bartlett_test,
    levene_test,
    split_segments,
    variance_ratio_test,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # series
    "TimeSeries", "Frequency", "FrequencyKind", "SeasonalPeriod",
    "from_records", "infer_frequency", "candidate_periods",
    # regression
    "LinearFit", "TrendSpec", "ols_fit", "newey_west_lrv", "schwert_maxlag", "select_adf_lag",
    # trend
    "UnitRootResult", "TrendDiagnosis", "TrendLabel",
    "adf_test", "kpss_test", "pp_test", "zivot_andrews_test", "classify_trend",
    # variance
    "VarianceResult", "split_segments", "levene_test", "bartlett_test",
    "arch_lm_test", "variance_ratio_test",
    # seasonality
    "Decomposition", "stl_decompose", "periodic_means_decompose", "centered_moving_average",
    "SeasonalityResult", "seasonal_strength", "kruskal_wallis_seasonal", "detect_seasonality",
    # report
    "Verdict", "TestResult", "DetectConfig", "DiagnosticsReport",
    "detect_all", "to_table", "to_markdown", "summarize",
    "table_to_csv", "table_from_csv", "table_to_json",
    # synth
    "SynthSpec", "generate", "uniforms", "normals",
    # errors
    "DiagnosticsError", "LengthMismatch", "TooShort", "NonMonotonicIndex", "NonFiniteValue",
    "DimensionMismatch", "RankDeficient", "LagTooLarge", "BadK", "BadPeriod", "BadSpec",
    "WrongResultSet", "FileWriteError", "TestSkipped", "DegenerateSegment", "ZeroVariance",
    "DegenerateVariance", "AllTied",
]
