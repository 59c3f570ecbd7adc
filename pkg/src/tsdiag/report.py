"""Battery orchestration and report rendering.

``detect_all`` runs the full battery (7 trend runs, 4 variance runs, 2 runs per
candidate seasonal period), never aborts on a degenerate input (individual
failures become verdict=skipped rows), classifies the trend picture, and
returns a :class:`DiagnosticsReport`. ``to_table`` / ``to_markdown`` /
``summarize`` render it; the row schema and section layout are fixed so the
outputs are stable byte-for-byte for a given input.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum

from . import notes as N
from .errors import BadSpec, FileWriteError, TestSkipped, TooShort
from .regression import TrendSpec
from .seasonality import STRENGTH_THRESHOLD, SeasonalityResult, detect_seasonality
from .series import Frequency, FrequencyKind, TimeSeries, candidate_periods, infer_frequency
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
from .variance import VarianceResult, arch_lm_test, bartlett_test, split_segments
from .variance import levene_test, variance_ratio_test

__all__ = [
    "Verdict",
    "TestResult",
    "DetectConfig",
    "DiagnosticsReport",
    "detect_all",
    "to_table",
    "to_markdown",
    "summarize",
    "table_to_csv",
    "table_from_csv",
    "TABLE_COLUMNS",
]

TABLE_COLUMNS = [
    "test_id",
    "category",
    "spec_or_period",
    "statistic",
    "p_value",
    "alpha",
    "verdict",
    "notes",
]

_NULLS = {
    "adf": "series has a unit root",
    "pp": "series has a unit root",
    "zivot_andrews": "series has a unit root with no break",
    "kpss_constant-only": "series is stationary around a constant level",
    "kpss_constant-trend": "series is stationary around a linear trend",
    "levene": "equal spread across segments",
    "bartlett": "equal variance across segments",
    "arch_lm": "no conditional heteroskedasticity",
    "variance_ratio": "equal variance in the first and last thirds",
    "kruskal_wallis": "equal location across seasonal phases",
    "seasonal_strength": "seasonal component is weak (strength below threshold)",
}


class Verdict(Enum):
    STATIONARY_COMPATIBLE = "stationary_compatible"
    NON_STATIONARITY_DETECTED = "non_stationarity_detected"
    SKIPPED = "skipped"
    # room in the verdict domain for callers building rows by hand; the
    # battery itself reports inconclusiveness at the trend-diagnosis level
    INCONCLUSIVE = "inconclusive"


@dataclass
class TestResult:
    """One row of the report."""

    test_id: str
    category: str
    spec_or_period: str
    null_hypothesis: str
    statistic: float | None
    p_value: float | None
    critical_values: dict[float, float] | None
    alpha: float
    verdict: Verdict
    notes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class DetectConfig:
    """Battery configuration; defaults match the documented battery."""

    alpha: float = 0.05
    variance_segments: int = 2
    arch_lags: int | None = None
    seasonal_strength_threshold: float = STRENGTH_THRESHOLD
    stl_robust: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 0.5:
            raise BadSpec(f"alpha must be in (0, 0.5], got {self.alpha}")
        if not 2 <= self.variance_segments <= 6:
            raise BadSpec(f"variance_segments must be in [2, 6], got {self.variance_segments}")
        if self.arch_lags is not None and self.arch_lags < 1:
            raise BadSpec("arch_lags must be >= 1 when given")
        if not 0.0 < self.seasonal_strength_threshold < 1.0:
            raise BadSpec("seasonal_strength_threshold must be inside (0, 1)")


@dataclass
class DiagnosticsReport:
    n: int
    start: datetime
    end: datetime
    frequency: Frequency
    trend_diagnosis: TrendDiagnosis
    results: list[TestResult]
    category_summary: dict[str, dict[str, int]]
    overall_note: str
    config: DetectConfig


# ---------------------------------------------------------------------------
# battery
# ---------------------------------------------------------------------------

def _trend_row(res: UnitRootResult, spec_label: str, alpha: float) -> TestResult:
    null_key = f"kpss_{res.spec.label}" if res.test_id == "kpss" else res.test_id
    detected = res.detected
    return TestResult(
        test_id=res.test_id,
        category="trend",
        spec_or_period=spec_label,
        null_hypothesis=_NULLS[null_key],
        statistic=res.statistic,
        p_value=res.p_value,
        critical_values=res.critical_values,
        alpha=alpha,
        verdict=Verdict.NON_STATIONARITY_DETECTED if detected else Verdict.STATIONARY_COMPATIBLE,
        notes=list(res.notes),
    )


def _skipped_row(test_id: str, category: str, spec_or_period: str, alpha: float, reason: str) -> TestResult:
    null_key = test_id if test_id in _NULLS else f"{test_id}_{spec_or_period}"
    return TestResult(
        test_id=test_id,
        category=category,
        spec_or_period=spec_or_period,
        null_hypothesis=_NULLS.get(null_key, ""),
        statistic=None,
        p_value=None,
        critical_values=None,
        alpha=alpha,
        verdict=Verdict.SKIPPED,
        notes=[reason],
    )


def _variance_row(res: VarianceResult, spec_or_period: str, alpha: float) -> TestResult:
    return TestResult(
        test_id=res.test_id,
        category="variance",
        spec_or_period=spec_or_period,
        null_hypothesis=_NULLS[res.test_id],
        statistic=res.statistic,
        p_value=res.p_value,
        critical_values=None,
        alpha=alpha,
        verdict=Verdict.NON_STATIONARITY_DETECTED if res.detected else Verdict.STATIONARY_COMPATIBLE,
        notes=list(res.notes),
    )


def _seasonality_row(res: SeasonalityResult, alpha: float) -> TestResult:
    spec_or_period = f"{res.period} ({res.label})"
    if res.skipped:
        verdict = Verdict.SKIPPED
    elif res.detected:
        verdict = Verdict.NON_STATIONARITY_DETECTED
    else:
        verdict = Verdict.STATIONARY_COMPATIBLE
    return TestResult(
        test_id=res.test_id,
        category="seasonality",
        spec_or_period=spec_or_period,
        null_hypothesis=_NULLS[res.test_id],
        statistic=res.statistic,
        p_value=res.p_value,
        critical_values=None,
        alpha=alpha,
        verdict=verdict,
        notes=list(res.notes),
    )


def detect_all(ts: TimeSeries, config: DetectConfig = DetectConfig()) -> DiagnosticsReport:
    """Run the full battery and assemble the report.

    Individual tests that cannot run on this input degrade to skipped rows;
    the battery itself never raises on degenerate data.
    """
    alpha = config.alpha
    freq = infer_frequency(ts)
    periods = candidate_periods(freq, ts.n)

    # --- trend -------------------------------------------------------------
    trend_runs: list[tuple[str, TrendSpec | None, UnitRootResult | None, str | None]] = []
    for test_id, fn, spec in (
        ("adf", adf_test, TrendSpec.CONSTANT_ONLY),
        ("adf", adf_test, TrendSpec.CONSTANT_TREND),
        ("kpss", kpss_test, TrendSpec.CONSTANT_ONLY),
        ("kpss", kpss_test, TrendSpec.CONSTANT_TREND),
        ("pp", pp_test, TrendSpec.CONSTANT_ONLY),
        ("pp", pp_test, TrendSpec.CONSTANT_TREND),
    ):
        try:
            trend_runs.append((test_id, spec, fn(ts, spec, alpha=alpha), None))
        except (TestSkipped, TooShort) as exc:
            trend_runs.append((test_id, spec, None, str(exc)))
    try:
        trend_runs.append(("zivot_andrews", None, zivot_andrews_test(ts, alpha=alpha), None))
    except (TestSkipped, TooShort) as exc:
        trend_runs.append(("zivot_andrews", None, None, str(exc)))

    by_key = {(tid, spec): res for tid, spec, res, _ in trend_runs}

    rows: list[TestResult] = []
    for tid, spec, res, reason in trend_runs:
        label = "intercept-break" if tid == "zivot_andrews" else spec.label
        if res is None:
            key = "zivot_andrews" if tid == "zivot_andrews" else f"{tid}_{label}" if tid == "kpss" else tid
            rows.append(
                TestResult(
                    test_id=tid,
                    category="trend",
                    spec_or_period=label,
                    null_hypothesis=_NULLS.get(key, _NULLS.get(tid, "")),
                    statistic=None,
                    p_value=None,
                    critical_values=None,
                    alpha=alpha,
                    verdict=Verdict.SKIPPED,
                    notes=[reason],
                )
            )
        else:
            row = _trend_row(res, label, alpha)
            # flag ADF / Phillips-Perron disagreement on the PP row
            if tid == "pp":
                adf_res = by_key.get(("adf", spec))
                if adf_res is not None and adf_res.detected != res.detected:
                    row.notes.append(N.adf_pp_disagreement(spec.label))
            rows.append(row)

    unit_root_results = [res for _, _, res, _ in trend_runs if res is not None]
    if len(unit_root_results) == 7:
        diagnosis = classify_trend(unit_root_results)
    else:
        skipped_names = [
            tid if spec is None else f"{tid} ({spec.label})"
            for tid, spec, res, _ in trend_runs
            if res is None
        ]
        diagnosis = TrendDiagnosis(
            label=TrendLabel.INCONCLUSIVE,
            explanation="Trend tests were skipped on this input: " + ", ".join(skipped_names) + ".",
            notes=[],
        )

    # --- variance ------------------------------------------------------------
    k = config.variance_segments
    seg_label = f"segments={k}"
    try:
        segments = split_segments(ts, k)
    except (TestSkipped, TooShort) as exc:
        segments = None
        seg_reason = str(exc)
    for tid, fn in (("levene", levene_test), ("bartlett", bartlett_test)):
        if segments is None:
            rows.append(_skipped_row(tid, "variance", seg_label, alpha, seg_reason))
            continue
        try:
            rows.append(_variance_row(fn(segments, alpha=alpha), seg_label, alpha))
        except (TestSkipped, TooShort) as exc:
            rows.append(_skipped_row(tid, "variance", seg_label, alpha, str(exc)))

    arch_label = f"lags={config.arch_lags}" if config.arch_lags is not None else f"lags={min(10, ts.n // 20)}"
    try:
        res = arch_lm_test(ts, lags=config.arch_lags, alpha=alpha)
        rows.append(_variance_row(res, f"lags={res.lags}", alpha))
    except (TestSkipped, TooShort) as exc:
        rows.append(_skipped_row("arch_lm", "variance", arch_label, alpha, str(exc)))
    try:
        rows.append(_variance_row(variance_ratio_test(ts, alpha=alpha), "thirds", alpha))
    except (TestSkipped, TooShort) as exc:
        rows.append(_skipped_row("variance_ratio", "variance", "thirds", alpha, str(exc)))

    # --- seasonality -----------------------------------------------------------
    season_results = detect_seasonality(
        ts,
        periods,
        alpha=alpha,
        threshold=config.seasonal_strength_threshold,
        robust_stl=config.stl_robust,
    )
    rows.extend(_seasonality_row(r, alpha) for r in season_results)

    # --- summary ---------------------------------------------------------------
    summary: dict[str, dict[str, int]] = {}
    for cat in ("trend", "variance", "seasonality"):
        cat_rows = [r for r in rows if r.category == cat]
        summary[cat] = {
            "tests_run": sum(1 for r in cat_rows if r.verdict is not Verdict.SKIPPED),
            "detections": sum(1 for r in cat_rows if r.verdict is Verdict.NON_STATIONARITY_DETECTED),
            "skipped": sum(1 for r in cat_rows if r.verdict is Verdict.SKIPPED),
        }

    note_parts = []
    total_det = sum(c["detections"] for c in summary.values())
    total_run = sum(c["tests_run"] for c in summary.values())
    if total_det:
        note_parts.append(f"{total_det} of {total_run} tests flagged non-stationarity")
    else:
        note_parts.append(f"no non-stationarity flagged across {total_run} tests")
    note_parts.append(f"trend diagnosis: {diagnosis.label.value}")
    if not periods:
        if freq.kind is FrequencyKind.UNKNOWN:
            note_parts.append(N.FREQUENCY_UNKNOWN)
        else:
            note_parts.append(N.no_periods(f"none defined at {freq.kind.value} sampling for n={ts.n}"))

    return DiagnosticsReport(
        n=ts.n,
        start=ts.start,
        end=ts.end,
        frequency=freq,
        trend_diagnosis=diagnosis,
        results=rows,
        category_summary=summary,
        overall_note="; ".join(note_parts),
        config=config,
    )


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def to_table(report: DiagnosticsReport) -> list[dict]:
    """Rows as records with a fixed column order; notes joined with '; '."""
    out = []
    for r in report.results:
        out.append(
            {
                "test_id": r.test_id,
                "category": r.category,
                "spec_or_period": r.spec_or_period,
                "statistic": r.statistic,
                "p_value": r.p_value,
                "alpha": r.alpha,
                "verdict": r.verdict.value,
                "notes": "; ".join(r.notes),
            }
        )
    return out


def table_to_csv(records: list[dict]) -> str:
    """Lossless CSV of ``to_table`` records (floats via repr, None as empty)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for rec in records:
        row = []
        for col in TABLE_COLUMNS:
            v = rec[col]
            if v is None:
                row.append("")
            elif isinstance(v, float):
                row.append(repr(v))
            else:
                row.append(str(v))
        writer.writerow(row)
    return buf.getvalue()


def table_from_csv(text: str) -> list[dict]:
    """Inverse of :func:`table_to_csv`."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    out = []
    for raw in reader:
        rec = dict(zip(header, raw))
        for col in ("statistic", "p_value", "alpha"):
            rec[col] = float(rec[col]) if rec[col] != "" else None
        out.append(rec)
    return out


def table_to_json(records: list[dict]) -> str:
    return json.dumps(records, indent=2)


def _fmt_stat(v: float | None) -> str:
    return "" if v is None else f"{v:.4f}"


def _fmt_p(v: float | None) -> str:
    return "" if v is None else f"{v:.4g}"


def _iso(dt: datetime) -> str:
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def summarize(report: DiagnosticsReport) -> str:
    """One deterministic paragraph: counts per category plus the trend verdict."""
    s = report.category_summary
    run = {c: s[c]["tests_run"] for c in s}
    det = {c: s[c]["detections"] for c in s}
    skipped = sum(s[c]["skipped"] for c in s)
    total_run = sum(run.values())
    total_det = sum(det.values())
    if total_det == 0:
        first = (
            f"No non-stationarity detected across {total_run} tests "
            f"(trend {run['trend']}, variance {run['variance']}, "
            f"seasonality {run['seasonality']})."
        )
    else:
        first = (
            f"Non-stationarity flagged by {total_det} of {total_run} tests "
            f"(trend {det['trend']}/{run['trend']}, variance {det['variance']}/{run['variance']}, "
            f"seasonality {det['seasonality']}/{run['seasonality']})."
        )
    parts = [first]
    if skipped:
        parts.append(f"{skipped} test was skipped." if skipped == 1 else f"{skipped} tests were skipped.")
    parts.append(f"Trend diagnosis: {report.trend_diagnosis.label.value}.")
    parts.append(report.trend_diagnosis.explanation)
    return " ".join(parts)


_SECTION_ORDER = ("trend", "variance", "seasonality")
_SECTION_TITLES = {"trend": "Trend", "variance": "Variance", "seasonality": "Seasonality"}
_DETAIL_HEADER = {"trend": "spec", "variance": "detail", "seasonality": "period"}


def to_markdown(report: DiagnosticsReport, path: str | None = None) -> str:
    """Render the fixed-layout markdown report; optionally write it to ``path``."""
    lines: list[str] = []
    lines.append("# Stationarity Diagnostics")
    lines.append("")
    lines.append("## Summary")
    lines.append("")
    lines.append(f"- Observations: {report.n}")
    lines.append(f"- Start: {_iso(report.start)}")
    lines.append(f"- End: {_iso(report.end)}")
    lines.append(
        f"- Frequency: {report.frequency.kind.value} "
        f"(median spacing {report.frequency.median_spacing:g} s)"
    )
    lines.append(f"- Alpha: {report.config.alpha:g}")
    lines.append("")
    lines.append(summarize(report))
    lines.append("")

    for cat in _SECTION_ORDER:
        lines.append(f"## {_SECTION_TITLES[cat]}")
        lines.append("")
        cat_rows = [r for r in report.results if r.category == cat]
        if not cat_rows:
            lines.append("No tests were run in this category.")
            lines.append("")
            continue
        detail = _DETAIL_HEADER[cat]
        lines.append(f"| test | {detail} | statistic | p-value | verdict | notes |")
        lines.append("| --- | --- | --- | --- | --- | --- |")
        for r in cat_rows:
            lines.append(
                f"| {r.test_id} | {r.spec_or_period} | {_fmt_stat(r.statistic)} "
                f"| {_fmt_p(r.p_value)} | {r.verdict.value} | {'; '.join(r.notes)} |"
            )
        lines.append("")

    lines.append("## Notes")
    lines.append("")
    note_lines = []
    for r in report.results:
        for note in r.notes:
            note_lines.append(f"- {r.test_id} ({r.spec_or_period}): {note}")
    for note in report.trend_diagnosis.notes:
        note_lines.append(f"- trend diagnosis: {note}")
    if not report.results or report.overall_note:
        note_lines.append(f"- overall: {report.overall_note}")
    if not note_lines:
        note_lines.append("- none")
    lines.extend(note_lines)
    lines.append("")

    text = "\n".join(lines)
    if path is not None:
        try:
            with open(path, "wb") as fh:
                fh.write(text.encode("utf-8"))
        except OSError as exc:
            raise FileWriteError(f"cannot write report to {path}: {exc}") from exc
    return text
