"""Independent reference computations used as test oracles.

Nothing here imports from ``asymcapm``; each routine takes a different path
(numerical quadrature, dense linear algebra, closed forms) from the code it
checks.
"""
import math

import numpy as np
from scipy import integrate


def chi2_pdf(u, df):
    if u <= 0:
        return 0.0
    k = df / 2.0
    return math.exp((k - 1) * math.log(u) - u / 2 - k * math.log(2) - math.lgamma(k))


def chi2_sf_quad(x, df):
    """Upper tail by adaptive quadrature of the density."""
    if x <= 0:
        return 1.0
    # split at the mode region so quad resolves the bulk before the tail
    split = max(x, df + 10 * math.sqrt(2 * df))
    head, _ = integrate.quad(chi2_pdf, x, split, args=(df,), epsabs=1e-14, epsrel=1e-13, limit=500)
    tail, _ = integrate.quad(chi2_pdf, split, math.inf, args=(df,), epsabs=1e-14, epsrel=1e-13, limit=500)
    return head + tail


def t_pdf(u, df):
    c = math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
    return math.exp(c - (df + 1) / 2 * math.log1p(u * u / df))


def t_sf_two_sided_quad(t, df):
    """P(|T| >= |t|): 1 - 2*integral over [0, |t|] for small |t|, 2*tail otherwise."""
    a = abs(t)
    if a <= 2.0:
        mid, _ = integrate.quad(t_pdf, 0.0, a, args=(df,), epsabs=1e-14, epsrel=1e-13, limit=500)
        return 1.0 - 2.0 * mid
    tail, _ = integrate.quad(t_pdf, a, math.inf, args=(df,), epsabs=1e-15, epsrel=1e-13, limit=500)
    return 2.0 * tail


def lower_inc_gamma_quad(s, x):
    """P(s, x) = integral_0^x t^(s-1) e^-t dt / Gamma(s)."""
    f = lambda t: math.exp((s - 1) * math.log(t) - t - math.lgamma(s)) if t > 0 else 0.0
    v, _ = integrate.quad(f, 0.0, x, epsabs=1e-14, epsrel=1e-13, limit=500)
    return v


def beta23_cdf(x):
    """Beta(2, 3) CDF: 12 * integral_0^x t (1-t)^2 dt = 12 (x^2/2 - 2x^3/3 + x^4/4)."""
    return 12.0 * (x**2 / 2 - 2 * x**3 / 3 + x**4 / 4)


def ols_normal_equations(y, x):
    """Intercept and slope by solving the 2x2 normal equations with a dense solver."""
    y = np.asarray(y, float)
    X = np.column_stack([np.ones(len(x)), np.asarray(x, float)])
    return np.linalg.solve(X.T @ X, X.T @ y)


def cov_ratio(y, x):
    """Cov/Var via numpy's covariance matrix (ddof=1)."""
    c = np.cov(np.asarray(y, float), np.asarray(x, float), ddof=1)
    return c[0, 1] / c[1, 1]


def r_squared_two_pass(y, fitted):
    y = np.asarray(y, float)
    ybar = sum(y) / len(y)
    tss = sum((v - ybar) ** 2 for v in y)
    ssr = sum((v - f) ** 2 for v, f in zip(y, fitted))
    return 1.0 - ssr / tss


def lstsq_r_squared(y, X):
    """Centered R² of y on the columns of X, solved by numpy's SVD-based lstsq."""
    y = np.asarray(y, float)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    return r_squared_two_pass(y, X @ coef)


def normal_sf_two_sided(z):
    return math.erfc(abs(z) / math.sqrt(2))
