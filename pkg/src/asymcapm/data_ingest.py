"""Loading, validating and date-aligning price series from CSV files."""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from datetime import date
from pathlib import Path

import numpy as np

from .errors import DataError

log = logging.getLogger(__name__)

__all__ = ["CsvSchema", "PriceSeries", "AlignedPair", "load_prices_csv", "write_prices_csv", "align"]


@dataclass(frozen=True)
class CsvSchema:
    """Column mapping for a price file. Defaults follow a lower-cased Yahoo export."""

    date_column: str = "date"
    price_column: str = "adj_close"
    skip_empty: bool = False


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """Dated adjusted closes for a single instrument, ascending by date."""

    instrument_id: str
    dates: tuple[date, ...]
    prices: np.ndarray

    def __post_init__(self):
        prices = np.array(self.prices, dtype=np.float64)
        prices.setflags(write=False)
        object.__setattr__(self, "prices", prices)
        object.__setattr__(self, "dates", tuple(self.dates))
        if prices.ndim != 1 or len(prices) != len(self.dates):
            raise DataError("dates and prices must be 1-d and of equal length")
        if len(prices) < 2:
            raise DataError(f"{self.instrument_id}: need at least 2 observations, got {len(prices)}")
        if not np.all(np.isfinite(prices)) or np.any(prices <= 0):
            raise DataError(f"{self.instrument_id}: prices must be finite and > 0")
        for i in range(1, len(self.dates)):
            if not self.dates[i] > self.dates[i - 1]:
                raise DataError(f"{self.instrument_id}: dates must be strictly increasing "
                                f"({self.dates[i - 1]} then {self.dates[i]})")

    def __len__(self) -> int:
        return len(self.dates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PriceSeries):
            return NotImplemented
        return (self.instrument_id == other.instrument_id
                and self.dates == other.dates
                and np.array_equal(self.prices, other.prices))

    def __hash__(self):
        return hash((self.instrument_id, self.dates, self.prices.tobytes()))

    def subset(self, keep: set[date]) -> "PriceSeries":
        idx = [i for i, d in enumerate(self.dates) if d in keep]
        return PriceSeries(self.instrument_id, tuple(self.dates[i] for i in idx), self.prices[idx])


@dataclass(frozen=True)
class AlignedPair:
    asset: PriceSeries
    market: PriceSeries
    dropped_asset: int = 0
    dropped_market: int = 0

    def __post_init__(self):
        if self.asset.dates != self.market.dates:
            raise DataError("asset and market date vectors differ; use align()")

    @property
    def dates(self) -> tuple[date, ...]:
        return self.asset.dates


def _parse_date(text: str, row: int, path: str) -> date:
    try:
        return date.fromisoformat(text.strip())
    except ValueError:
        raise DataError(f"unparseable date {text!r} (expected YYYY-MM-DD)", row=row, path=path) from None


def _parse_price(text: str, row: int, path: str) -> float:
    s = text.strip()
    # float() would also accept "1_000", "inf", "nan"; only plain decimals are allowed
    if not s or any(ch not in "0123456789.-+eE" for ch in s):
        raise DataError(f"unparseable price {text!r}", row=row, path=path)
    try:
        value = float(s)
    except ValueError:
        raise DataError(f"unparseable price {text!r}", row=row, path=path) from None
    if not math.isfinite(value):
        raise DataError(f"non-finite price {text!r}", row=row, path=path)
    if value <= 0:
        raise DataError(f"non-positive price {value}", row=row, path=path)
    return value


def load_prices_csv(path, schema: CsvSchema = CsvSchema(), instrument_id: str | None = None) -> PriceSeries:
    """Read a dated price column from a UTF-8 CSV with a header row.

    Row numbers in error messages are 1-based file lines (the header is line 1).
    Rows with an empty price cell raise unless ``schema.skip_empty`` is set.
    The result is sorted ascending regardless of file order.
    """
    path = Path(path)
    sp = str(path)
    try:
        with path.open("r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise DataError("file is empty (missing header row)", path=sp) from None
            header = [h.strip().lstrip("﻿") for h in header]
            missing = [c for c in (schema.date_column, schema.price_column) if c not in header]
            if missing:
                raise DataError(f"missing column(s) {missing}; header is {header}", path=sp)
            di, pi = header.index(schema.date_column), header.index(schema.price_column)
            rows: list[tuple[date, float, int]] = []
            seen: dict[date, int] = {}
            skipped = 0
            for lineno, rec in enumerate(reader, start=2):
                if not rec or all(not c.strip() for c in rec):
                    continue
                if len(rec) <= max(di, pi):
                    raise DataError("row has too few fields", row=lineno, path=sp)
                d = _parse_date(rec[di], lineno, sp)
                if not rec[pi].strip():
                    if schema.skip_empty:
                        skipped += 1
                        continue
                    raise DataError("empty price cell", row=lineno, path=sp)
                p = _parse_price(rec[pi], lineno, sp)
                if d in seen:
                    raise DataError(f"duplicate date {d} (first seen on row {seen[d]})", row=lineno, path=sp)
                seen[d] = lineno
                rows.append((d, p, lineno))
    except OSError as exc:
        raise DataError(f"cannot read file: {exc.strerror or exc}", path=sp) from None
    except UnicodeDecodeError:
        raise DataError("file is not valid UTF-8", path=sp) from None

    if skipped:
        log.info("%s: skipped %d rows with empty prices", sp, skipped)
    if len(rows) < 2:
        raise DataError(f"need at least 2 price observations, found {len(rows)}", path=sp)
    rows.sort(key=lambda r: r[0])
    return PriceSeries(
        instrument_id if instrument_id is not None else path.stem,
        tuple(r[0] for r in rows),
        np.array([r[1] for r in rows]),
    )


def write_prices_csv(series: PriceSeries, path, schema: CsvSchema = CsvSchema()) -> None:
    """Inverse of :func:`load_prices_csv`; prices are written with ``repr`` so they round-trip exactly."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([schema.date_column, schema.price_column])
        for d, p in zip(series.dates, series.prices):
            w.writerow([d.isoformat(), repr(float(p))])


def align(asset: PriceSeries, market: PriceSeries) -> AlignedPair:
    """Restrict both series to their common dates (exact calendar match)."""
    common = set(asset.dates) & set(market.dates)
    if len(common) < 3:
        raise DataError(
            f"only {len(common)} common dates between {asset.instrument_id!r} and "
            f"{market.instrument_id!r}; need at least 3"
        )
    a = asset if len(common) == len(asset) else asset.subset(common)
    m = market if len(common) == len(market) else market.subset(common)
    pair = AlignedPair(a, m, len(asset) - len(a), len(market) - len(m))
    if pair.dropped_asset or pair.dropped_market:
        log.info("align: dropped %d asset and %d market observations",
                 pair.dropped_asset, pair.dropped_market)
    return pair
