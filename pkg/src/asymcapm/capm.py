"""Symmetric and asymmetric (upside/downside) CAPM betas, risk classification and hedge ratios.

A long holder is exposed to falling prices, so the long-position hedge uses
the downside beta; a short seller is exposed to rising prices and hedges with
the upside beta. The symmetric beta serves both positions.
"""
from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from datetime import date
from typing import Literal

import numpy as np

from .data_ingest import AlignedPair
from .diagnostics import DiagnosticReport, run_diagnostics
from .errors import AsymCapmError, EstimationError
from .regression import OlsFit, beta_moment, ols_fit, rolling_moment_betas
from .returns import ReturnMethod, ReturnSeries, compute_returns, decompose

BetaKind = Literal["symmetric", "upside", "downside"]
Position = Literal["long", "short"]
Basis = Literal["symmetric", "asymmetric"]
BETA_KINDS: tuple[BetaKind, ...] = ("symmetric", "upside", "downside")

# OLS and moment-ratio betas must agree to this relative tolerance
EQUIVALENCE_RTOL = 1e-10

__all__ = [
    "BetaEstimate", "RiskClassification", "HedgeRecommendation", "RollingBeta",
    "AnalysisConfig", "CapmReport", "estimate_symmetric", "estimate_asymmetric",
    "classify_risk", "hedge_recommendation", "hedge_table", "rolling_betas",
    "required_return", "run_analysis",
]


@dataclass(frozen=True)
class BetaEstimate:
    kind: BetaKind
    value: float
    se: float
    t_stat: float
    p_value: float
    n: int
    method: Literal["ols", "moment"]
    intercept: float
    ols_value: float
    moment_value: float
    fit: OlsFit = field(repr=False, compare=False)
    regressor: np.ndarray = field(repr=False, compare=False)


@dataclass(frozen=True)
class RiskClassification:
    kind: BetaKind
    relation: Literal["riskier_than_market", "as_risky_as_market", "less_risky_than_market"]


@dataclass(frozen=True)
class HedgeRecommendation:
    position: Position
    futures_side: Literal["short_futures", "long_futures"]
    ratio: float
    basis_beta: BetaKind

    @property
    def basis(self) -> Basis:
        return "symmetric" if self.basis_beta == "symmetric" else "asymmetric"


@dataclass(frozen=True)
class RollingBeta:
    start: date
    end: date
    beta: float | None
    beta_plus: float | None
    beta_minus: float | None


def _check_aligned(r_i: ReturnSeries, r_m: ReturnSeries) -> None:
    if r_i.dates != r_m.dates:
        raise EstimationError("asset and market returns are not aligned on identical dates")


def _estimate(kind: BetaKind, y: np.ndarray, x: np.ndarray, method: str) -> BetaEstimate:
    fit = ols_fit(y, x)
    mom = beta_moment(y, x)
    if abs(fit.slope - mom) > EQUIVALENCE_RTOL * max(1.0, abs(fit.slope)):
        raise EstimationError(f"OLS slope {fit.slope!r} and moment beta {mom!r} disagree", stage=kind)
    if method not in ("ols", "moment"):
        raise EstimationError(f"unknown beta method {method!r}")
    return BetaEstimate(
        kind=kind,
        value=fit.slope if method == "ols" else mom,
        se=fit.se_slope,
        t_stat=fit.t_slope,
        p_value=fit.p_slope,
        n=fit.n,
        method=method,
        intercept=fit.intercept,
        ols_value=fit.slope,
        moment_value=mom,
        fit=fit,
        regressor=x,
    )


def estimate_symmetric(r_i: ReturnSeries, r_m: ReturnSeries, risk_free: float = 0.0,
                       method: str = "ols") -> BetaEstimate:
    """Slope of (r_i - rf) on (r_m - rf)."""
    _check_aligned(r_i, r_m)
    try:
        return _estimate("symmetric", r_i.values - risk_free, r_m.values - risk_free, method)
    except EstimationError as exc:
        if exc.stage:
            raise
        raise EstimationError(str(exc), stage="symmetric") from None


def estimate_asymmetric(r_i: ReturnSeries, r_m: ReturnSeries, risk_free: float = 0.0,
                        method: str = "ols", excess_then_decompose: bool = False
                        ) -> tuple[BetaEstimate, BetaEstimate]:
    """Upside and downside betas over the full-length censored series.

    By default the components are formed from raw returns and the risk-free
    rate is subtracted from each component afterwards, which leaves both betas
    unchanged. With ``excess_then_decompose`` the rate is subtracted before the
    split, which moves the zero threshold and therefore the betas.
    """
    _check_aligned(r_i, r_m)
    if excess_then_decompose:
        ri, rm = r_i.values - risk_free, r_m.values - risk_free
        shift = 0.0
    else:
        ri, rm = r_i.values, r_m.values
        shift = risk_free
    di = decompose(ReturnSeries(r_i.instrument_id, r_i.dates, ri, r_i.method))
    dm = decompose(ReturnSeries(r_m.instrument_id, r_m.dates, rm, r_m.method))
    out = []
    for kind, y, x, word in (("upside", di.plus, dm.plus, "up"), ("downside", di.minus, dm.minus, "down")):
        try:
            out.append(_estimate(kind, y - shift, x - shift, method))
        except EstimationError as exc:
            raise EstimationError(
                f"market {word}side component has zero variance (no {word} periods?): {exc}", stage=kind
            ) from None
    return out[0], out[1]


def classify_risk(beta: BetaEstimate | float, tolerance: float = 1e-9, kind: BetaKind | None = None
                  ) -> RiskClassification:
    value = beta.value if isinstance(beta, BetaEstimate) else float(beta)
    kind = kind or (beta.kind if isinstance(beta, BetaEstimate) else "symmetric")
    if abs(value - 1.0) <= tolerance:
        relation = "as_risky_as_market"
    elif value > 1.0:
        relation = "riskier_than_market"
    else:
        relation = "less_risky_than_market"
    return RiskClassification(kind, relation)


def _beta_value(betas, kind: BetaKind) -> float:
    if isinstance(betas, Mapping):
        b = betas.get(kind)
    else:
        b = next((e for e in betas if e.kind == kind), None)
    if b is None:
        raise EstimationError(f"{kind} beta is required for this hedge", stage="hedge")
    return b.value if isinstance(b, BetaEstimate) else float(b)


def hedge_recommendation(position: Position, betas, basis: Basis = "asymmetric") -> HedgeRecommendation:
    """Futures units per unit of spot that neutralize market exposure.

    ``betas`` is a mapping ``kind -> BetaEstimate | float`` or an iterable of
    :class:`BetaEstimate`. Negative betas are rejected: hedging them would
    need a same-side futures position, which this model does not define.
    """
    if position not in ("long", "short"):
        raise ValueError(f"position must be 'long' or 'short', got {position!r}")
    if basis == "symmetric":
        kind: BetaKind = "symmetric"
    elif basis == "asymmetric":
        kind = "downside" if position == "long" else "upside"
    else:
        raise ValueError(f"basis must be 'symmetric' or 'asymmetric', got {basis!r}")
    ratio = _beta_value(betas, kind)
    if not math.isfinite(ratio) or ratio < 0:
        raise EstimationError(f"{kind} beta is {ratio}; no hedge ratio is defined for a negative beta",
                              stage="hedge")
    side = "short_futures" if position == "long" else "long_futures"
    return HedgeRecommendation(position, side, ratio, kind)


def hedge_table(betas) -> tuple[HedgeRecommendation, ...]:
    """The four recommendations: (symmetric, asymmetric) × (long, short)."""
    return tuple(hedge_recommendation(p, betas, b)
                 for b in ("symmetric", "asymmetric") for p in ("long", "short"))


def required_return(beta: float, risk_free: float, market_premium: float) -> float:
    """Expected return implied by the CAPM line, rf + beta * (E[R_M] - rf)."""
    return risk_free + beta * market_premium


def rolling_betas(r_i: ReturnSeries, r_m: ReturnSeries, window: int, step: int = 1) -> list[RollingBeta]:
    """Re-estimate all three betas over sliding windows of ``window`` returns.

    A window whose market component is constant (for instance no down months)
    yields ``None`` for that beta rather than being skipped.
    """
    _check_aligned(r_i, r_m)
    n = len(r_i)
    if window < 8:
        raise EstimationError(f"rolling window must be at least 8, got {window}", stage="rolling")
    if window > n:
        raise EstimationError(f"rolling window {window} exceeds sample of {n} returns", stage="rolling")
    if step < 1:
        raise EstimationError(f"step must be >= 1, got {step}", stage="rolling")
    di, dm = decompose(r_i), decompose(r_m)
    cols = [rolling_moment_betas(y, x, window, step)
            for y, x in ((r_i.values, r_m.values), (di.plus, dm.plus), (di.minus, dm.minus))]

    def gap(v: float) -> float | None:
        return None if math.isnan(v) else float(v)

    rows = []
    for k in range(len(cols[0])):
        s = k * step
        rows.append(RollingBeta(r_i.dates[s], r_i.dates[s + window - 1],
                                gap(cols[0][k]), gap(cols[1][k]), gap(cols[2][k])))
    return rows


@dataclass(frozen=True)
class AnalysisConfig:
    return_method: ReturnMethod = "simple"
    risk_free: float = 0.0
    excess_then_decompose: bool = False
    bg_lags: int = 1
    tolerance: float = 1e-9
    beta_method: Literal["ols", "moment"] = "ols"
    market_premium: float | None = None

    def __post_init__(self):
        if self.return_method not in ("simple", "log"):
            raise ValueError(f"return_method must be 'simple' or 'log', got {self.return_method!r}")
        if not math.isfinite(self.risk_free):
            raise ValueError("risk_free must be finite")
        if self.bg_lags < 1:
            raise ValueError(f"bg_lags must be >= 1, got {self.bg_lags}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")
        if self.beta_method not in ("ols", "moment"):
            raise ValueError(f"beta_method must be 'ols' or 'moment', got {self.beta_method!r}")


@dataclass(frozen=True)
class CapmReport:
    asset_id: str
    market_id: str
    window: tuple[date, date]
    n_returns: int
    config: AnalysisConfig
    betas: tuple[BetaEstimate, BetaEstimate, BetaEstimate]
    classifications: tuple[RiskClassification, ...]
    diagnostics: tuple[DiagnosticReport, ...]
    hedges: tuple[HedgeRecommendation, ...]
    dropped_asset: int = 0
    dropped_market: int = 0
    required_returns: dict[str, float] | None = None

    def beta(self, kind: BetaKind) -> BetaEstimate:
        return next(b for b in self.betas if b.kind == kind)

    def diagnostic(self, kind: BetaKind) -> DiagnosticReport:
        return next(d for d in self.diagnostics if d.model_label == kind)


def run_analysis(pair: AlignedPair, config: AnalysisConfig = AnalysisConfig()) -> CapmReport:
    """Prices to report: returns, three regressions, diagnostics per regression, classifications, hedges."""
    try:
        r_i = compute_returns(pair.asset, config.return_method)
        r_m = compute_returns(pair.market, config.return_method)
    except AsymCapmError as exc:
        raise EstimationError(str(exc), stage="returns") from None
    sym = estimate_symmetric(r_i, r_m, config.risk_free, config.beta_method)
    up, down = estimate_asymmetric(r_i, r_m, config.risk_free, config.beta_method,
                                   config.excess_then_decompose)
    betas = (sym, up, down)
    diags = tuple(run_diagnostics(b.fit, b.regressor, b.kind, config.bg_lags) for b in betas)
    premium = None
    if config.market_premium is not None:
        premium = {b.kind: required_return(b.value, config.risk_free, config.market_premium) for b in betas}
    return CapmReport(
        asset_id=pair.asset.instrument_id,
        market_id=pair.market.instrument_id,
        window=(r_i.dates[0], r_i.dates[-1]),
        n_returns=len(r_i),
        config=config,
        betas=betas,
        classifications=tuple(classify_risk(b, config.tolerance) for b in betas),
        diagnostics=diags,
        hedges=hedge_table(betas),
        dropped_asset=pair.dropped_asset,
        dropped_market=pair.dropped_market,
        required_returns=premium,
    )
