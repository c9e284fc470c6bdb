#!/usr/bin/env python3
"""Numba kernels vs. the fallback path used when ASYMCAPM_DISABLE_NUMBA=1.

    python benchmarks/bench_kernels.py

Rolling betas: compiled loop vs. numpy sliding-window version.
Special functions and moment beta: compiled vs. the same source interpreted.
"""
import math
import sys
import time

import numpy as np

from asymcapm import _accel
from asymcapm import distributions as D
from asymcapm import regression as R

if not _accel.USE_NUMBA:
    sys.exit("numba is disabled or missing; unset ASYMCAPM_DISABLE_NUMBA to compare both paths")


def best_of(fn, repeat=5):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def row(name, t_nb, t_fb, check):
    print(f"{name:<34}{t_nb * 1e3:>11.2f}{t_fb * 1e3:>12.2f}{t_fb / t_nb:>9.1f}x  max|diff|={check:.1e}")


def main():
    rng = np.random.default_rng(0)
    print(f"{'kernel':<34}{'numba ms':>11}{'fallback ms':>12}{'speedup':>10}")
    print("-" * 80)

    for n, window in ((600, 60), (5000, 250), (20000, 1000)):
        x = rng.normal(0.0, 0.05, n)
        y = 0.9 * x + rng.normal(0.0, 0.03, n)
        R._rolling_loop(y, x, window, 1)  # compile
        t_nb = best_of(lambda: R._rolling_loop(y, x, window, 1))
        t_fb = best_of(lambda: R._rolling_numpy(y, x, window, 1))
        diff = float(np.nanmax(np.abs(R._rolling_loop(y, x, window, 1) - R._rolling_numpy(y, x, window, 1))))
        row(f"rolling beta n={n} w={window}", t_nb, t_fb, diff)

    a = rng.uniform(0.5, 60, 2000)
    xs = rng.uniform(0, 1, 2000)
    t_nb = best_of(lambda: [D._inc_beta(ai, 0.5, xi) for ai, xi in zip(a, xs)])
    t_fb = best_of(lambda: [D._inc_beta.py_func(ai, 0.5, xi) for ai, xi in zip(a, xs)])
    diff = max(abs(D._inc_beta(ai, 0.5, xi) - D._inc_beta.py_func(ai, 0.5, xi)) for ai, xi in zip(a, xs))
    row("incomplete beta x2000", t_nb, t_fb, diff)

    s = rng.uniform(0.5, 30, 2000)
    xg = rng.uniform(0, 80, 2000)
    t_nb = best_of(lambda: [D._inc_gamma(si, xi, True) for si, xi in zip(s, xg)])
    t_fb = best_of(lambda: [D._inc_gamma.py_func(si, xi, True) for si, xi in zip(s, xg)])
    diff = max(abs(D._inc_gamma(si, xi, True) - D._inc_gamma.py_func(si, xi, True)) for si, xi in zip(s, xg))
    row("incomplete gamma x2000", t_nb, t_fb, diff)

    x = rng.normal(size=500)
    y = rng.normal(size=500)
    t_nb = best_of(lambda: [R._moment_beta(y, x) for _ in range(1000)])
    t_fb = best_of(lambda: [R._moment_beta.py_func(y, x) for _ in range(1000)], repeat=2)
    diff = abs(R._moment_beta(y, x) - R._moment_beta.py_func(y, x))
    row("moment beta n=500 x1000", t_nb, t_fb, diff)
    assert math.isfinite(diff)


if __name__ == "__main__":
    main()
