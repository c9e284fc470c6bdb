"""JSON and text rendering of analysis results.

JSON numbers are emitted twice: the exact binary value (shortest repr) and a
6-decimal display string. Non-finite values become ``null`` with a display
of ``"inf"``/``"-inf"``/``"nan"``. Key order is fixed, so output is
byte-for-byte deterministic.
"""
from __future__ import annotations

import json
import math
from importlib import resources

from .capm import CapmReport, RollingBeta
from .diagnostics import DiagnosticResult

SCHEMA_VERSION = "1.0"
P_FLOOR = 1e-5

__all__ = ["SCHEMA_VERSION", "load_schema", "report_to_dict", "dumps_report",
           "format_p", "render_estimates", "render_diagnostics", "render_hedges",
           "rolling_to_rows", "dumps_rolling_json", "dumps_rolling_csv"]


def load_schema() -> dict:
    return json.loads(resources.files("asymcapm").joinpath("report.schema.json").read_text("utf-8"))


def _num(v: float | None) -> dict | None:
    if v is None:
        return None
    v = float(v)
    if math.isfinite(v):
        return {"value": v, "display": f"{v:.6f}"}
    return {"value": None, "display": "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")}


def format_p(p: float | None) -> str:
    """Text-mode p-value: six decimals, or ``<0.00001`` below the floor."""
    if p is None:
        return "n/a"
    return "<0.00001" if p < P_FLOOR else f"{p:.6f}"


def _diag(r: DiagnosticResult) -> dict:
    return {
        "test": r.test_name,
        "status": r.status,
        "null_hypothesis": r.null_hypothesis,
        "df": r.df,
        "statistic": _num(r.statistic),
        "p_value": _num(r.p_value),
    }


def report_to_dict(rep: CapmReport) -> dict:
    cfg = rep.config
    return {
        "schema_version": SCHEMA_VERSION,
        "asset_id": rep.asset_id,
        "market_id": rep.market_id,
        "window": {"start": rep.window[0].isoformat(), "end": rep.window[1].isoformat()},
        "n_returns": rep.n_returns,
        "dropped": {"asset": rep.dropped_asset, "market": rep.dropped_market},
        "config": {
            "return_method": cfg.return_method,
            "risk_free": _num(cfg.risk_free),
            "excess_then_decompose": cfg.excess_then_decompose,
            "bg_lags": cfg.bg_lags,
            "tolerance": cfg.tolerance,
            "beta_method": cfg.beta_method,
        },
        "betas": [
            {
                "kind": b.kind,
                "value": _num(b.value),
                "se": _num(b.se),
                "t_stat": _num(b.t_stat),
                "p_value": _num(b.p_value),
                "n": b.n,
                "method": b.method,
                "intercept": _num(b.intercept),
                "r_squared": _num(b.fit.r_squared),
                "ols_value": _num(b.ols_value),
                "moment_value": _num(b.moment_value),
            }
            for b in rep.betas
        ],
        "classifications": [{"kind": c.kind, "relation": c.relation} for c in rep.classifications],
        "diagnostics": [
            {"model": d.model_label, "results": [_diag(r) for r in d.results]} for d in rep.diagnostics
        ],
        "hedges": [
            {"position": h.position, "futures_side": h.futures_side, "ratio": _num(h.ratio),
             "basis": h.basis, "basis_beta": h.basis_beta}
            for h in rep.hedges
        ],
        "required_returns": (None if rep.required_returns is None
                             else {k: _num(v) for k, v in rep.required_returns.items()}),
    }


def dumps_report(rep: CapmReport) -> str:
    return json.dumps(report_to_dict(rep), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


_LABELS = {"symmetric": "beta", "upside": "beta+", "downside": "beta-"}
_TEST_LABELS = {"jarque_bera": "Jarque-Bera", "breusch_godfrey": "Breusch-Godfrey",
                "breusch_pagan": "Breusch-Pagan"}


def render_estimates(rep: CapmReport) -> str:
    lines = [
        f"Asymmetric CAPM: {rep.asset_id} vs {rep.market_id}, "
        f"{rep.window[0]} to {rep.window[1]} ({rep.n_returns} {rep.config.return_method} returns)",
        "",
        f"{'Parameter':<10}{'Estimate':>12}{'Std.Err':>12}{'t':>12}{'P-value':>12}  Risk vs market",
    ]
    for b, c in zip(rep.betas, rep.classifications):
        t = f"{b.t_stat:.6f}" if math.isfinite(b.t_stat) else ("inf" if b.t_stat > 0 else "-inf")
        lines.append(f"{_LABELS[b.kind]:<10}{b.value:>12.6f}{b.se:>12.6f}{t:>12}"
                     f"{format_p(b.p_value):>12}  {c.relation.replace('_', ' ')}")
    if rep.required_returns is not None:
        lines.append("")
        lines.append("Required return (rf + beta * premium):")
        for k, v in rep.required_returns.items():
            lines.append(f"  {_LABELS[k]:<8}{v:>12.6f}")
    return "\n".join(lines) + "\n"


def render_diagnostics(rep: CapmReport) -> str:
    lines = ["Diagnostic p-values", f"{'Test':<18}" + "".join(f"{_LABELS[d.model_label]:>12}" for d in rep.diagnostics)]
    for i, name in enumerate(_TEST_LABELS):
        cells = []
        for d in rep.diagnostics:
            r = d.results[i]
            cells.append(f"{format_p(r.p_value) if r.ok else r.status.replace('_', ' ')[:11]:>12}")
        lines.append(f"{_TEST_LABELS[name]:<18}" + "".join(cells))
    lines.append(f"(Breusch-Godfrey lags = {rep.config.bg_lags}; Breusch-Pagan in Koenker n*R^2 form)")
    return "\n".join(lines) + "\n"


def render_hedges(hedges) -> str:
    lines = [f"{'Position':<10}{'Basis':<12}{'Beta':<11}{'Futures':<15}{'Ratio':>10}"]
    for h in hedges:
        lines.append(f"{h.position:<10}{h.basis:<12}{h.basis_beta:<11}{h.futures_side:<15}{h.ratio:>10.6f}")
    return "\n".join(lines) + "\n"


ROLLING_COLUMNS = ("start", "date", "beta", "beta_plus", "beta_minus")


def rolling_to_rows(rows: list[RollingBeta]) -> list[dict]:
    return [{"start": r.start.isoformat(), "date": r.end.isoformat(), "beta": r.beta,
             "beta_plus": r.beta_plus, "beta_minus": r.beta_minus} for r in rows]


def dumps_rolling_json(rows: list[RollingBeta], window: int, step: int) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "window": window, "step": step, "rows": rolling_to_rows(rows)}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def dumps_rolling_csv(rows: list[RollingBeta]) -> str:
    """CSV with the literal ``null`` in gap cells."""
    out = [",".join(ROLLING_COLUMNS)]
    for r in rolling_to_rows(rows):
        out.append(",".join("null" if r[c] is None else (r[c] if isinstance(r[c], str) else repr(r[c]))
                            for c in ROLLING_COLUMNS))
    return "\n".join(out) + "\n"
