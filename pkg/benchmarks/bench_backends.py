"""Compare the numba and numpy backends on the two hot kernels.

Runs the walk-supremum histogram and the float forward recurrence on
both backends, checks the outputs are bit-identical, and prints
best-of-3 wall times. The jit path is warmed once before timing so
compilation is excluded.

Usage: python3 benchmarks/bench_backends.py [--reps N] [--horizon N] [--K N]
"""

import argparse
import time

import numpy as np

from toepfix.backends import jit_backend, numpy_backend
from toepfix.stochastic import _thresholds, make_dist


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=200_000)
    ap.add_argument("--horizon", type=int, default=2_000)
    ap.add_argument("--K", type=int, default=2_000_000)
    args = ap.parse_args()

    thr = np.array(_thresholds(make_dist([0.7, 0.0, 0.3])), dtype=np.uint64)
    walk = dict(drop=1, horizon=args.horizon, reps=args.reps, nbins=512, chunk=4096)
    coeffs = (0.6, 0.3, 0.1)
    prefix = (1.0,)

    # warm the jit compilation cache
    jit_backend.sup_hist(thr, 1, 100, 1000, 1, 512, 4096)
    jit_backend.recurrence_float(coeffs, prefix, 1, 10)

    rows = []
    t_nb, out_nb = best_of(lambda: jit_backend.sup_hist(thr, seed=1, **walk))
    t_np, out_np = best_of(lambda: numpy_backend.sup_hist(thr, seed=1, **walk))
    assert np.array_equal(out_nb[0], out_np[0]) and out_nb[1] == out_np[1]
    rows.append(("sup_hist", f"{args.reps}x{args.horizon}", t_nb, t_np))

    t_nb, x_nb = best_of(lambda: jit_backend.recurrence_float(coeffs, prefix, 1, args.K))
    t_np, x_np = best_of(lambda: numpy_backend.recurrence_float(coeffs, prefix, 1, args.K))
    assert np.array_equal(x_nb, x_np)
    rows.append(("recurrence_float", f"K={args.K}", t_nb, t_np))

    print(f"{'kernel':<18} {'size':<16} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, size, a, b in rows:
        print(f"{name:<18} {size:<16} {a:>9.3f}s {b:>9.3f}s {b / a:>7.1f}x")
    print("outputs bit-identical across backends")


if __name__ == "__main__":
    main()
