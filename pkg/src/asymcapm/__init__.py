"""Position-dependent market risk: symmetric, upside and downside CAPM betas."""

__version__ = "0.1.0"

from ._accel import USE_NUMBA
from .capm import (AnalysisConfig, BetaEstimate, CapmReport, HedgeRecommendation, RiskClassification,
                   RollingBeta, classify_risk, estimate_asymmetric, estimate_symmetric, hedge_recommendation,
                   hedge_table, required_return, rolling_betas, run_analysis)
from .data_ingest import AlignedPair, CsvSchema, PriceSeries, align, load_prices_csv, write_prices_csv
from .diagnostics import (DiagnosticReport, DiagnosticResult, breusch_godfrey, breusch_pagan,
                          jarque_bera, mls_fit)
from .distributions import chi2_sf, reg_inc_beta, reg_inc_gamma_lower, reg_inc_gamma_upper, student_t_sf_two_sided
from .errors import AsymCapmError, ConvergenceError, DataError, DomainError, EstimationError
from .regression import OlsFit, beta_moment, ols_fit, rolling_moment_betas
from .returns import DecomposedReturns, ReturnSeries, compute_returns, decompose, excess_returns
