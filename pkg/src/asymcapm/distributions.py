"""Regularized incomplete gamma/beta functions and the tail probabilities built on them.

Only what the inference code needs: the chi-square survival function (for the
LM and Jarque-Bera statistics) and the two-sided Student-t tail (for slope
p-values). Degrees of freedom are integers throughout.
"""
from __future__ import annotations

import math
import operator

from ._accel import jit
from .errors import ConvergenceError, DomainError

__all__ = [
    "reg_inc_gamma_lower",
    "reg_inc_gamma_upper",
    "reg_inc_beta",
    "chi2_sf",
    "student_t_sf_two_sided",
    "MAX_ITER",
]

MAX_ITER = 300
_EPS = 1e-15
_TINY = 1e-300


@jit
def _gamma_series(s, x):
    # P(s, x) by the power series; valid (and fast) for x < s + 1.
    ap = s
    term = 1.0 / s
    total = term
    for _ in range(MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + s * math.log(x) - math.lgamma(s))
    return -1.0


@jit
def _gamma_contfrac(s, x):
    # Q(s, x) by the modified Lentz continued fraction; for x >= s + 1.
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(-x + s * math.log(x) - math.lgamma(s)) * h
    return -1.0


@jit
def _beta_contfrac(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    return -1.0


@jit
def _inc_gamma(s, x, upper):
    if x == 0.0:
        return 1.0 if upper else 0.0
    if x < s + 1.0:
        p = _gamma_series(s, x)
        if p < 0.0:
            return -1.0
        return 1.0 - p if upper else p
    q = _gamma_contfrac(s, x)
    if q < 0.0:
        return -1.0
    return q if upper else 1.0 - q


@jit
def _inc_beta(a, b, x):
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        cf = _beta_contfrac(a, b, x)
        if cf < 0.0:
            return -1.0
        return front * cf / a
    cf = _beta_contfrac(b, a, 1.0 - x)
    if cf < 0.0:
        return -1.0
    return 1.0 - front * cf / b


def _clip01(v: float) -> float:
    return min(1.0, max(0.0, v))


def _checked(value: float, what: str) -> float:
    if value < 0.0:
        raise ConvergenceError(f"{what} did not converge within {MAX_ITER} iterations")
    return _clip01(value)


def _as_df(df) -> int:
    try:
        k = operator.index(df)
    except TypeError:
        raise DomainError(f"degrees of freedom must be an integer, got {df!r}") from None
    if k < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {k}")
    return k


def _gamma_args(s, x) -> tuple[float, float]:
    s, x = float(s), float(x)
    if not (s > 0.0) or math.isinf(s):
        raise DomainError(f"shape must be finite and > 0, got {s}")
    if not (x >= 0.0):
        raise DomainError(f"x must be >= 0, got {x}")
    return s, x


def reg_inc_gamma_lower(s: float, x: float) -> float:
    """Regularized lower incomplete gamma P(s, x)."""
    s, x = _gamma_args(s, x)
    if math.isinf(x):
        return 1.0
    return _checked(_inc_gamma(s, x, False), "incomplete gamma")


def reg_inc_gamma_upper(s: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x)."""
    s, x = _gamma_args(s, x)
    if math.isinf(x):
        return 0.0
    return _checked(_inc_gamma(s, x, True), "incomplete gamma")


def reg_inc_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b).

    Evaluated by continued fraction, switching to ``1 - I_{1-x}(b, a)`` past
    ``x = (a + 1) / (a + b + 2)`` where the direct fraction converges slowly.
    """
    a, b, x = float(a), float(b), float(x)
    if not (a > 0.0 and b > 0.0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"a and b must be finite and > 0, got a={a}, b={b}")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x}")
    return _checked(_inc_beta(a, b, x), "incomplete beta")


def chi2_sf(x: float, df: int) -> float:
    """Survival function of the chi-square distribution with ``df`` degrees of freedom."""
    k = _as_df(df)
    x = float(x)
    if not (x >= 0.0):
        raise DomainError(f"chi-square statistic must be >= 0, got {x}")
    return reg_inc_gamma_upper(0.5 * k, 0.5 * x)


def student_t_sf_two_sided(t: float, df: int) -> float:
    """P(|T| >= |t|) for T ~ Student-t with ``df`` degrees of freedom."""
    k = _as_df(df)
    t = float(t)
    if math.isnan(t):
        raise DomainError("t statistic is NaN")
    if math.isinf(t):
        return 0.0
    if t == 0.0:
        return 1.0
    return reg_inc_beta(0.5 * k, 0.5, k / (k + t * t))
