"""Freeze the end-to-end report for the bundled fixture (default settings, numba path).

    python scripts/make_golden.py
"""
from pathlib import Path

from asymcapm import align, load_prices_csv, run_analysis
from asymcapm._accel import USE_NUMBA
from asymcapm.report import dumps_report

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "asymcapm" / "data"

if __name__ == "__main__":
    if not USE_NUMBA:
        raise SystemExit("generate the golden file with numba enabled")
    pair = align(load_prices_csv(DATA / "synthetic_asset.csv"), load_prices_csv(DATA / "synthetic_market.csv"))
    out = ROOT / "tests" / "golden" / "fixture_report.json"
    out.write_text(dumps_report(run_analysis(pair)), encoding="utf-8")
    print(f"wrote {out}")
