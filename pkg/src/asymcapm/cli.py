"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 estimation error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .capm import AnalysisConfig, rolling_betas, run_analysis
from .data_ingest import CsvSchema, align, load_prices_csv
from .errors import DataError, EstimationError
from .report import (SCHEMA_VERSION, _num, dumps_report, dumps_rolling_csv, dumps_rolling_json,
                     render_diagnostics, render_estimates, render_hedges)
from .returns import compute_returns

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_ESTIMATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for data errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {v}")
    return v


def _common(p: argparse.ArgumentParser, json_only: bool = False) -> None:
    g = p.add_argument_group("inputs")
    g.add_argument("--asset", required=True, type=Path, help="asset price CSV")
    g.add_argument("--market", required=True, type=Path, help="market index price CSV")
    g.add_argument("--date-column", default="date")
    g.add_argument("--price-column", default="adj_close")
    g.add_argument("--skip-empty", action="store_true", help="skip rows whose price cell is empty")
    g.add_argument("--asset-id", help="label for the asset (default: file stem)")
    g.add_argument("--market-id", help="label for the market (default: file stem)")
    p.add_argument("--method", choices=("simple", "log"), default="simple", help="return definition")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")


def _estimation_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--risk-free", type=_finite_float, default=0.0, help="constant per-period risk-free rate")
    p.add_argument("--excess-then-decompose", action="store_true",
                   help="subtract the risk-free rate before splitting returns into +/- parts")
    p.add_argument("--bg-lags", type=_positive_int, default=1, help="Breusch-Godfrey lag order")
    p.add_argument("--tolerance", type=_finite_float, default=1e-9,
                   help="band around 1 treated as 'as risky as the market'")
    p.add_argument("--beta-method", choices=("ols", "moment"), default="ols")
    p.add_argument("--market-premium", type=_finite_float,
                   help="per-period market risk premium; adds required returns to the report")
    p.add_argument("--output", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="asymcapm", description="Position-dependent (upside/downside) CAPM betas.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="beta, beta+ and beta- with p-values")
    _common(p)
    _estimation_flags(p)
    p.add_argument("--diagnostics", action="store_true", help="also print the residual diagnostic table")

    p = sub.add_parser("hedge", help="futures hedge ratios per position")
    _common(p)
    _estimation_flags(p)
    p.add_argument("--position", choices=("long", "short"), help="restrict to one spot position")

    p = sub.add_parser("rolling", help="betas re-estimated over sliding windows")
    _common(p)
    p.add_argument("--window", type=_positive_int, required=True, help="returns per window (>= 8)")
    p.add_argument("--step", type=_positive_int, default=1)
    p.add_argument("--output", choices=("csv", "json"), default="csv")
    return parser


def _config(args) -> AnalysisConfig:
    if not args.tolerance > 0:
        raise UsageError("--tolerance must be > 0")
    return AnalysisConfig(
        return_method=args.method,
        risk_free=args.risk_free,
        excess_then_decompose=args.excess_then_decompose,
        bg_lags=args.bg_lags,
        tolerance=args.tolerance,
        beta_method=args.beta_method,
        market_premium=args.market_premium,
    )


def _load_pair(args):
    schema = CsvSchema(args.date_column, args.price_column, args.skip_empty)
    asset = load_prices_csv(args.asset, schema, args.asset_id)
    market = load_prices_csv(args.market, schema, args.market_id)
    return align(asset, market)


def _cmd_estimate(args) -> str:
    cfg = _config(args)
    rep = run_analysis(_load_pair(args), cfg)
    if args.output == "json":
        return dumps_report(rep)
    text = render_estimates(rep)
    if args.diagnostics:
        text += "\n" + render_diagnostics(rep)
    return text


def _cmd_hedge(args) -> str:
    cfg = _config(args)
    rep = run_analysis(_load_pair(args), cfg)
    hedges = [h for h in rep.hedges if args.position in (None, h.position)]
    if args.output == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "asset_id": rep.asset_id,
            "market_id": rep.market_id,
            "hedges": [{"position": h.position, "futures_side": h.futures_side, "ratio": _num(h.ratio),
                        "basis": h.basis, "basis_beta": h.basis_beta} for h in hedges],
        }
        return json.dumps(doc, indent=2) + "\n"
    return render_hedges(hedges)


def _cmd_rolling(args) -> str:
    if args.window < 8:
        raise UsageError(f"--window must be at least 8, got {args.window}")
    pair = _load_pair(args)
    r_i = compute_returns(pair.asset, args.method)
    r_m = compute_returns(pair.market, args.method)
    if args.window > len(r_i):
        raise UsageError(f"--window {args.window} exceeds the {len(r_i)} available returns")
    rows = rolling_betas(r_i, r_m, args.window, args.step)
    if args.output == "json":
        return dumps_rolling_json(rows, args.window, args.step)
    return dumps_rolling_csv(rows)


_COMMANDS = {"estimate": _cmd_estimate, "hedge": _cmd_hedge, "rolling": _cmd_rolling}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        text = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"asymcapm: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"asymcapm: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except EstimationError as exc:
        print(f"asymcapm: estimation error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    if args.out is not None:
        try:
            args.out.write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"asymcapm: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_DATA
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
