"""Per-period returns and their positive/negative decomposition."""
from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date
from typing import Literal

import numpy as np

from .data_ingest import PriceSeries
from .errors import DataError

ReturnMethod = Literal["simple", "log"]

__all__ = ["ReturnSeries", "DecomposedReturns", "compute_returns", "decompose", "excess_returns"]


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    instrument_id: str
    dates: tuple[date, ...]
    values: np.ndarray
    method: ReturnMethod = "simple"
    risk_free: float = 0.0  # constant already subtracted from ``values``

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "dates", tuple(self.dates))
        if v.ndim != 1 or len(v) != len(self.dates):
            raise DataError("dates and return values must be 1-d and of equal length")
        if not np.all(np.isfinite(v)):
            raise DataError(f"{self.instrument_id}: returns must be finite")
        if self.method not in ("simple", "log"):
            raise DataError(f"unknown return method {self.method!r}")

    def __len__(self) -> int:
        return len(self.values)

    def window(self, start: int, stop: int) -> "ReturnSeries":
        return replace(self, dates=self.dates[start:stop], values=self.values[start:stop])


@dataclass(frozen=True, eq=False)
class DecomposedReturns:
    """Full-length censored components: ``plus = max(r, 0)``, ``minus = min(r, 0)``."""

    source: ReturnSeries
    plus: np.ndarray
    minus: np.ndarray


def compute_returns(prices: PriceSeries, method: ReturnMethod = "simple") -> ReturnSeries:
    """Returns dated by the later of each pair of consecutive prices."""
    p = prices.prices
    if method == "simple":
        r = p[1:] / p[:-1] - 1.0
    elif method == "log":
        r = np.log(p[1:] / p[:-1])
    else:
        raise DataError(f"unknown return method {method!r}; expected 'simple' or 'log'")
    return ReturnSeries(prices.instrument_id, prices.dates[1:], r, method)


def decompose(returns: ReturnSeries) -> DecomposedReturns:
    r = returns.values
    # zeros carry the sign of r so that plus + minus reproduces r bit for bit, -0.0 included
    zero = r * 0.0
    plus = np.where(r > 0.0, r, zero)
    minus = np.where(r < 0.0, r, zero)
    plus.setflags(write=False)
    minus.setflags(write=False)
    return DecomposedReturns(returns, plus, minus)


def excess_returns(returns: ReturnSeries, risk_free: float) -> ReturnSeries:
    """Subtract a constant per-period risk-free rate from every observation."""
    rf = float(risk_free)
    if not np.isfinite(rf):
        raise DataError(f"risk-free rate must be finite, got {risk_free!r}")
    if rf == 0.0:
        return returns
    return replace(returns, values=returns.values - rf, risk_free=returns.risk_free + rf)
