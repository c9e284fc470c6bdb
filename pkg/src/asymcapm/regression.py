"""Single-regressor least squares with classical inference, plus moment-ratio betas.

``ols_fit`` and ``beta_moment`` compute the same slope by different routes
(vectorized centered cross-products vs. a compiled two-pass covariance
kernel); the package checks one against the other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import _accel
from ._accel import jit
from .distributions import student_t_sf_two_sided
from .errors import EstimationError

__all__ = ["OlsFit", "ols_fit", "beta_moment", "rolling_moment_betas"]

# relative spread below which a regressor is treated as constant
_DEGENERATE_RTOL = 1e-13


@dataclass(frozen=True, eq=False)
class OlsFit:
    n: int
    intercept: float
    slope: float
    se_intercept: float
    se_slope: float
    t_slope: float
    p_slope: float
    residuals: np.ndarray
    sigma2_hat: float
    r_squared: float

    @property
    def dof(self) -> int:
        return self.n - 2


def _as_pair(y, x, min_n: int) -> tuple[np.ndarray, np.ndarray]:
    y = np.ascontiguousarray(y, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    if y.ndim != 1 or x.ndim != 1:
        raise EstimationError("inputs must be one-dimensional")
    if len(y) != len(x):
        raise EstimationError(f"length mismatch: y has {len(y)} observations, x has {len(x)}")
    if len(y) < min_n:
        raise EstimationError(f"need at least {min_n} observations, got {len(y)}")
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(x))):
        raise EstimationError("inputs contain non-finite values")
    return y, x


@jit
def _is_degenerate(sxx, n, scale):
    return sxx <= 0.0 or math.sqrt(sxx / n) <= _DEGENERATE_RTOL * scale


def ols_fit(y, x) -> OlsFit:
    """Regress ``y`` on ``x`` with an intercept.

    Standard errors are the classical homoscedastic ones; the slope p-value
    is two-sided against Student-t with ``n - 2`` degrees of freedom. A perfect
    fit gives ``se_slope == 0`` and ``t_slope == ±inf`` (p = 0), or t = 0 and
    p = 1 when the slope itself is zero.
    """
    y, x = _as_pair(y, x, 3)
    n = len(y)
    xm, ym = x.mean(), y.mean()
    dx, dy = x - xm, y - ym
    sxx = float(dx @ dx)
    if _is_degenerate(sxx, n, float(np.max(np.abs(x)))):
        raise EstimationError("regressor is constant; slope is undefined")
    slope = float(dx @ dy) / sxx
    intercept = float(ym - slope * xm)
    resid = dy - slope * dx
    ssr = float(resid @ resid)
    syy = float(dy @ dy)
    sigma2 = ssr / (n - 2)
    se_slope = math.sqrt(sigma2 / sxx)
    se_intercept = math.sqrt(sigma2 * (1.0 / n + xm * xm / sxx))
    if se_slope > 0.0:
        t = slope / se_slope
    elif slope == 0.0:
        t = 0.0
    else:
        t = math.copysign(math.inf, slope)
    r2 = 1.0 - ssr / syy if syy > 0.0 else 0.0
    resid.setflags(write=False)
    return OlsFit(
        n=n,
        intercept=intercept,
        slope=slope,
        se_intercept=se_intercept,
        se_slope=se_slope,
        t_slope=t,
        p_slope=student_t_sf_two_sided(t, n - 2),
        residuals=resid,
        sigma2_hat=sigma2,
        r_squared=min(1.0, max(0.0, r2)),
    )


@jit
def _moment_beta(y, x):
    n = x.shape[0]
    xm = 0.0
    ym = 0.0
    scale = 0.0
    for i in range(n):
        xm += x[i]
        ym += y[i]
        if abs(x[i]) > scale:
            scale = abs(x[i])
    xm /= n
    ym /= n
    sxy = 0.0
    sxx = 0.0
    for i in range(n):
        dx = x[i] - xm
        sxy += dx * (y[i] - ym)
        sxx += dx * dx
    if _is_degenerate(sxx, n, scale):
        return np.nan
    cov = sxy / (n - 1)
    var = sxx / (n - 1)
    return cov / var


def beta_moment(r_i, r_m) -> float:
    """Cov(r_i, r_m) / Var(r_m), both with the ``n - 1`` divisor."""
    y, x = _as_pair(r_i, r_m, 2)
    b = _moment_beta(y, x)
    if math.isnan(b):
        raise EstimationError("market series has zero variance (degenerate window)")
    return float(b)


def _rolling_loop_py(y, x, window, step):
    count = (y.shape[0] - window) // step + 1
    out = np.empty(count)
    for k in range(count):
        s = k * step
        out[k] = _moment_beta(y[s:s + window], x[s:s + window])
    return out


_rolling_loop = jit(_rolling_loop_py)


def _rolling_numpy(y, x, window, step):
    yw = sliding_window_view(y, window)[::step]
    xw = sliding_window_view(x, window)[::step]
    dx = xw - xw.mean(axis=1, keepdims=True)
    dy = yw - yw.mean(axis=1, keepdims=True)
    sxx = np.einsum("ij,ij->i", dx, dx)
    sxy = np.einsum("ij,ij->i", dx, dy)
    scale = np.max(np.abs(xw), axis=1)
    bad = (sxx <= 0.0) | (np.sqrt(sxx / window) <= _DEGENERATE_RTOL * scale)
    with np.errstate(divide="ignore", invalid="ignore"):
        beta = (sxy / (window - 1)) / (sxx / (window - 1))
    beta[bad] = np.nan
    return beta


def rolling_moment_betas(r_i, r_m, window: int, step: int = 1) -> np.ndarray:
    """Moment-ratio beta for each window; NaN marks a window with a constant market series.

    Window ``k`` covers observations ``[k*step, k*step + window)``.
    """
    y, x = _as_pair(r_i, r_m, 2)
    if window < 2 or window > len(y):
        raise EstimationError(f"window must be in [2, {len(y)}], got {window}")
    if step < 1:
        raise EstimationError(f"step must be >= 1, got {step}")
    if _accel.USE_NUMBA:
        return _rolling_loop(y, x, window, step)
    return _rolling_numpy(y, x, window, step)
