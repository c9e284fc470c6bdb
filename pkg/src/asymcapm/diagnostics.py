"""Residual diagnostics: Jarque-Bera, Breusch-Godfrey and Breusch-Pagan (Koenker form).

Every test returns a chi-square statistic with its degrees of freedom and
p-value. When the sample is too small for a test, the result carries
``status="insufficient_sample"`` and no statistic instead of raising, so a
report can still be produced.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .distributions import chi2_sf
from .errors import EstimationError
from .regression import OlsFit

TestName = Literal["jarque_bera", "breusch_godfrey", "breusch_pagan"]

NULL_HYPOTHESES = {
    "jarque_bera": "residuals are normally distributed",
    "breusch_godfrey": "no serial correlation in residuals",
    "breusch_pagan": "residuals are homoscedastic",
}
TEST_ORDER: tuple[TestName, ...] = ("jarque_bera", "breusch_godfrey", "breusch_pagan")

__all__ = [
    "DiagnosticResult", "DiagnosticReport", "mls_fit", "centered_r_squared",
    "jarque_bera", "breusch_godfrey", "breusch_pagan", "run_diagnostics",
]


@dataclass(frozen=True)
class DiagnosticResult:
    test_name: TestName
    statistic: float | None
    df: int
    p_value: float | None
    status: str = "ok"

    @property
    def null_hypothesis(self) -> str:
        return NULL_HYPOTHESES[self.test_name]

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    @classmethod
    def from_statistic(cls, name: TestName, statistic: float, df: int) -> "DiagnosticResult":
        statistic = max(0.0, float(statistic))
        return cls(name, statistic, df, chi2_sf(statistic, df))

    @classmethod
    def insufficient(cls, name: TestName, df: int) -> "DiagnosticResult":
        return cls(name, None, df, None, status="insufficient_sample")

    @classmethod
    def undefined(cls, name: TestName, df: int) -> "DiagnosticResult":
        return cls(name, None, df, None, status="undefined")


@dataclass(frozen=True)
class DiagnosticReport:
    model_label: str
    results: tuple[DiagnosticResult, ...]

    def __post_init__(self):
        if tuple(r.test_name for r in self.results) != TEST_ORDER:
            raise ValueError("a diagnostic report holds exactly the three tests, in order")

    def __getitem__(self, name: str) -> DiagnosticResult:
        for r in self.results:
            if r.test_name == name:
                return r
        raise KeyError(name)


def _is_constant(y: np.ndarray) -> bool:
    scale = float(np.max(np.abs(y))) if len(y) else 0.0
    return float(np.ptp(y)) <= 1e-12 * scale


def centered_r_squared(y, resid) -> float:
    """1 - SSR/TSS about the mean; 0 for a constant response."""
    y = np.asarray(y, dtype=np.float64)
    if _is_constant(y):
        return 0.0
    dy = y - y.mean()
    return float(1.0 - (resid @ resid) / (dy @ dy))


def mls_fit(y, X) -> tuple[np.ndarray, np.ndarray, float]:
    """Least squares of ``y`` on the columns of ``X`` via Householder QR.

    ``X`` is a sequence of columns (or an ``(n, k)`` array). The caller supplies
    the constant column. Returns ``(coefficients, residuals, centered R²)``.
    """
    y = np.asarray(y, dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    elif X.shape[0] != len(y) and X.shape[1] == len(y):
        X = X.T
    n, k = X.shape
    if n != len(y):
        raise EstimationError(f"design has {n} rows but response has {len(y)}")
    if n < k + 1:
        raise EstimationError(f"need at least {k + 1} observations for {k} regressors, got {n}")
    q, r = np.linalg.qr(X)
    diag = np.abs(np.diag(r))
    if diag.min() <= max(n, k) * np.finfo(float).eps * max(diag.max(), 1.0):
        raise EstimationError("design matrix is rank deficient (singular auxiliary regression)")
    coef = np.linalg.solve(r, q.T @ y)
    resid = y - X @ coef
    return coef, resid, centered_r_squared(y, resid)


def jarque_bera(residuals) -> DiagnosticResult:
    e = np.asarray(residuals, dtype=np.float64)
    n = len(e)
    if n < 4:
        return DiagnosticResult.insufficient("jarque_bera", 2)
    d = e - e.mean()
    m2 = float(np.mean(d**2))
    if m2 <= 0.0 or np.sqrt(m2) <= 1e-14 * float(np.max(np.abs(e))):
        raise EstimationError("Jarque-Bera undefined for zero-variance residuals")
    skew = float(np.mean(d**3)) / m2**1.5
    kurt = float(np.mean(d**4)) / m2**2
    jb = n * (skew**2 / 6.0 + (kurt - 3.0) ** 2 / 24.0)
    return DiagnosticResult.from_statistic("jarque_bera", jb, 2)


def breusch_godfrey(fit: OlsFit, x, lags: int = 1) -> DiagnosticResult:
    """LM test for serial correlation up to ``lags``.

    Auxiliary regression of e_t on [1, x_t, e_{t-1}, ..., e_{t-lags}] over all
    n observations, pre-sample lags filled with zero; statistic n·R².
    """
    if lags < 1:
        raise EstimationError(f"lags must be >= 1, got {lags}")
    e = fit.residuals
    n = fit.n
    if n <= lags + 2:
        return DiagnosticResult.insufficient("breusch_godfrey", lags)
    if _is_constant(e):
        # zero-variance response: auxiliary R² is 0 by convention
        return DiagnosticResult.from_statistic("breusch_godfrey", 0.0, lags)
    cols = [np.ones(n), np.asarray(x, dtype=np.float64)]
    for j in range(1, lags + 1):
        lagged = np.zeros(n)
        lagged[j:] = e[:-j]
        cols.append(lagged)
    _, _, r2 = mls_fit(e, np.column_stack(cols))
    return DiagnosticResult.from_statistic("breusch_godfrey", n * r2, lags)


def breusch_pagan(fit: OlsFit, x) -> DiagnosticResult:
    """Koenker's studentized LM test: n·R² from regressing e² on [1, x]."""
    n = fit.n
    if n < 4:
        return DiagnosticResult.insufficient("breusch_pagan", 1)
    e2 = fit.residuals**2
    _, _, r2 = mls_fit(e2, np.column_stack([np.ones(n), np.asarray(x, dtype=np.float64)]))
    return DiagnosticResult.from_statistic("breusch_pagan", n * r2, 1)


def run_diagnostics(fit: OlsFit, x, label: str, bg_lags: int = 1) -> DiagnosticReport:
    """All three tests on one regression. Undefined tests (e.g. JB on a perfect fit) become markers."""
    def guarded(name, df, run):
        try:
            return run()
        except EstimationError:
            return DiagnosticResult.undefined(name, df)

    return DiagnosticReport(label, (
        guarded("jarque_bera", 2, lambda: jarque_bera(fit.residuals)),
        guarded("breusch_godfrey", bg_lags, lambda: breusch_godfrey(fit, x, bg_lags)),
        guarded("breusch_pagan", 1, lambda: breusch_pagan(fit, x)),
    ))
