"""Command-line interface: ``tsdiag analyze`` and ``tsdiag synth``.

Exit codes: 0 success, 1 I/O error, 2 parse/validation error (messages name
the offending line), 3 non-stationarity detected under --fail-on-detection.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone

from .errors import BadSpec, DiagnosticsError, FileWriteError
from .report import DetectConfig, detect_all, summarize, table_to_csv, table_to_json, to_markdown, to_table
from .report import Verdict
from .series import FrequencyKind, from_records, parse_timestamp
from .synth import SynthSpec, generate

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_DETECTED = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsdiag",
        description="Stationarity diagnostics for univariate time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="run the diagnostic battery on a CSV file")
    p_an.add_argument("input", help="CSV file with a header row")
    p_an.add_argument("--datetime-column", default=None, help="column name or 0-based index (default: first)")
    p_an.add_argument("--value-column", default=None, help="column name or 0-based index (default: second)")
    p_an.add_argument("--datetime-format", default=None, metavar="PATTERN",
                      help="strptime pattern for the datetime column (default: ISO-8601)")
    p_an.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    p_an.add_argument("--output-markdown", default=None, metavar="PATH", help="write the markdown report")
    p_an.add_argument("--output-table", default=None, metavar="PATH", help="write the result table")
    p_an.add_argument("--table-format", choices=("csv", "json"), default="csv")
    p_an.add_argument("--fail-on-detection", action="store_true", help="exit 3 when any test detects non-stationarity")
    p_an.add_argument("--verbose", action="store_true", help="print the full row table to stdout")

    p_sy = sub.add_parser("synth", help="generate a deterministic synthetic series")
    p_sy.add_argument("--out", required=True, metavar="PATH", help="output CSV path")
    p_sy.add_argument("--n", type=int, required=True, help="number of observations")
    p_sy.add_argument("--freq", default="daily", choices=[k.value for k in FrequencyKind])
    p_sy.add_argument("--seed", type=int, default=0)
    p_sy.add_argument("--baseline", type=float, default=0.0)
    p_sy.add_argument("--trend-slope", type=float, default=0.0)
    p_sy.add_argument("--seasonal-amplitude", type=float, default=0.0)
    p_sy.add_argument("--seasonal-period", type=int, default=7)
    p_sy.add_argument("--noise-sigma", type=float, default=1.0)
    p_sy.add_argument("--unit-root", action="store_true")
    p_sy.add_argument("--variance-break", nargs=2, type=float, default=None, metavar=("FRAC", "MULT"))
    p_sy.add_argument("--level-break", nargs=2, type=float, default=None, metavar=("FRAC", "SHIFT"))
    p_sy.add_argument("--arch", nargs=2, type=float, default=None, metavar=("OMEGA", "ALPHA1"))
    return parser


def _resolve_column(spec: str | None, header: list[str], default_idx: int, what: str) -> int:
    if spec is None:
        if default_idx >= len(header):
            raise BadSpec(f"input needs at least {default_idx + 1} columns for the {what} column")
        return default_idx
    if spec in header:
        return header.index(spec)
    if spec.lstrip("-").isdigit():
        idx = int(spec)
        if 0 <= idx < len(header):
            return idx
    raise BadSpec(f"unknown {what} column {spec!r}; header is {header}")


def _parse_stamp(text: str, fmt: str | None) -> float:
    if fmt is None:
        return parse_timestamp(text)
    dt = datetime.strptime(text.strip(), fmt)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def _read_csv(path: str, dt_spec: str | None, val_spec: str | None,
              dt_format: str | None = None) -> tuple[list[float], list[float]]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise BadSpec("input file is empty") from None
        dt_idx = _resolve_column(dt_spec, header, 0, "datetime")
        val_idx = _resolve_column(val_spec, header, 1, "value")
        if dt_idx == val_idx:
            raise BadSpec("datetime and value columns must differ")
        stamps: list[float] = []
        values: list[float] = []
        # the header is file line 1; data begins at line 2
        for lineno, row in enumerate(reader, start=2):
            if not row or all(cell.strip() == "" for cell in row):
                continue
            if max(dt_idx, val_idx) >= len(row):
                raise BadSpec(f"line {lineno}: expected at least {max(dt_idx, val_idx) + 1} columns")
            try:
                stamps.append(_parse_stamp(row[dt_idx], dt_format))
            except ValueError as exc:
                raise BadSpec(f"line {lineno}: cannot parse datetime {row[dt_idx]!r}: {exc}") from None
            try:
                values.append(float(row[val_idx]))
            except ValueError:
                raise BadSpec(f"line {lineno}: cannot parse value {row[val_idx]!r} as a number") from None
    return stamps, values


def _cmd_analyze(args: argparse.Namespace) -> int:
    try:
        stamps, values = _read_csv(args.input, args.datetime_column, args.value_column,
                                   args.datetime_format)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (BadSpec, DiagnosticsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    try:
        ts = from_records(stamps, values)
        config = DetectConfig(alpha=args.alpha)
        report = detect_all(ts, config)
    except DiagnosticsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    print(summarize(report))
    if args.verbose:
        print()
        print(f"n={report.n} frequency={report.frequency.kind.value} "
              f"median_spacing={report.frequency.median_spacing:g}s alpha={config.alpha:g}")
        for rec in to_table(report):
            print(
                f"{rec['test_id']:>18} {rec['spec_or_period']:<16} "
                f"stat={'' if rec['statistic'] is None else format(rec['statistic'], '.4f'):>10} "
                f"p={'' if rec['p_value'] is None else format(rec['p_value'], '.4g'):>8} "
                f"{rec['verdict']}"
            )

    try:
        if args.output_markdown:
            to_markdown(report, path=args.output_markdown)
        if args.output_table:
            records = to_table(report)
            payload = table_to_csv(records) if args.table_format == "csv" else table_to_json(records)
            with open(args.output_table, "wb") as fh:
                fh.write(payload.encode("utf-8"))
    except (OSError, FileWriteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.fail_on_detection and any(
        r.verdict is Verdict.NON_STATIONARITY_DETECTED for r in report.results
    ):
        return EXIT_DETECTED
    return EXIT_OK


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        n=args.n,
        freq_kind=FrequencyKind(args.freq),
        baseline=args.baseline,
        trend_slope=args.trend_slope,
        seasonal_amplitude=args.seasonal_amplitude,
        seasonal_period=args.seasonal_period,
        noise_sigma=args.noise_sigma,
        unit_root=args.unit_root,
        variance_break=tuple(args.variance_break) if args.variance_break else None,
        level_break=tuple(args.level_break) if args.level_break else None,
        arch=tuple(args.arch) if args.arch else None,
        seed=args.seed,
    )
    try:
        ts = generate(spec)
    except DiagnosticsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    lines = ["datetime,value"]
    for stamp, value in zip(ts.timestamps, ts.values):
        dt = datetime.fromtimestamp(float(stamp), tz=timezone.utc)
        # repr of the Python float is the shortest lossless decimal form
        lines.append(f"{dt.strftime('%Y-%m-%dT%H:%M:%SZ')},{float(value)!r}")
    try:
        with open(args.out, "wb") as fh:
            fh.write(("\n".join(lines) + "\n").encode("utf-8"))
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze":
        return _cmd_analyze(args)
    return _cmd_synth(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
