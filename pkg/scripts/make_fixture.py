"""Regenerate the bundled synthetic price fixture.

The real AAPL / NASDAQ Composite closes cannot be redistributed, so the
package ships a stand-in: 43 month-end closes (2020-09-30 .. 2024-03-31)
for a synthetic index and a synthetic stock whose up-market and down-market
sensitivities differ.

    python scripts/make_fixture.py [outdir]

Generator: numpy.random.default_rng(SEED); index returns ~ N(1.2%, 6%);
stock returns = 0.4% + 1.05 * max(r_m, 0) + 0.85 * min(r_m, 0) + N(0, 3.5%).
Prices are rounded to cents, as a data vendor would publish them.
"""
import sys
from datetime import date
from pathlib import Path

import numpy as np

SEED = 20200831
N_PRICES = 43


def month_ends(first_year: int, first_month: int, count: int) -> list[date]:
    out = []
    y, m = first_year, first_month
    for _ in range(count):
        ny, nm = (y + 1, 1) if m == 12 else (y, m + 1)
        out.append(date.fromordinal(date(ny, nm, 1).toordinal() - 1))
        y, m = ny, nm
    return out


def main(outdir: Path) -> None:
    rng = np.random.default_rng(SEED)
    r_m = rng.normal(0.012, 0.06, N_PRICES - 1)
    noise = rng.normal(0.0, 0.035, N_PRICES - 1)
    r_a = 0.004 + 1.05 * np.maximum(r_m, 0) + 0.85 * np.minimum(r_m, 0) + noise
    dates = month_ends(2020, 9, N_PRICES)
    for name, start, rets in (("synthetic_market", 11167.51, r_m), ("synthetic_asset", 115.81, r_a)):
        prices = start * np.concatenate([[1.0], np.cumprod(1.0 + rets)])
        lines = ["date,adj_close"] + [f"{d.isoformat()},{p:.2f}" for d, p in zip(dates, prices)]
        (outdir / f"{name}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/asymcapm/data")
