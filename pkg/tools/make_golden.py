"""Regenerate the golden report fixtures in tests/golden/.

Run from the repository root:

    python3 tools/make_golden.py

The fixture series is the demo recipe (baseline + gentle trend + weekly
seasonality + unit noise, daily, three years, seed 42). Outputs are frozen
bytes; regenerate only on an intentional format change and re-review the
diff by hand.
"""
import pathlib

from tsdiag.report import detect_all, table_to_csv, to_markdown, to_table
from tsdiag.synth import SynthSpec, generate

GOLDEN_SPEC = SynthSpec(
    n=1095,
    seed=42,
    baseline=5.0,
    trend_slope=0.01,
    seasonal_amplitude=2.0,
    seasonal_period=7,
    noise_sigma=1.0,
)


def main() -> None:
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"
    out_dir.mkdir(parents=True, exist_ok=True)
    report = detect_all(generate(GOLDEN_SPEC))
    md = to_markdown(report)
    csv_text = table_to_csv(to_table(report))
    (out_dir / "report.md").write_bytes(md.encode("utf-8"))
    (out_dir / "table.csv").write_bytes(csv_text.encode("utf-8"))
    print(f"wrote {out_dir / 'report.md'} ({len(md)} chars)")
    print(f"wrote {out_dir / 'table.csv'} ({len(csv_text)} chars)")


if __name__ == "__main__":
    main()
