#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the fused six-point pipeline (triad vertices -> cofactor fit ->
classification) on the workloads that dominate batch runs: a region-map
style grid sweep and a random-sample classification batch.

Run:  python benchmarks/bench_kernels.py [n]
"""

import sys
import time

import numpy as np

from triconic.kernels import py as pyk

try:
    from triconic.kernels import _fast as ck
except ImportError:
    ck = None


def grid_workload(impl, n):
    tri = (0.1, 0.2, 1.3, 0.15, 0.5, 1.1)
    acc = 0
    for i in range(n):
        for j in range(n):
            x = -0.5 + 2.5 * i / (n - 1)
            y = -0.5 + 2.5 * j / (n - 1)
            st, code, _, _, _ = impl.six_point(*tri, pyk.KIND_P_ELLIPSE, x, y)
            acc += code
    return acc


def random_workload(impl, n, seed=123):
    rng = np.random.default_rng(seed)
    data = rng.uniform(-1.0, 2.0, (n, 8))
    acc = 0
    for row in data:
        st, code, _, _, _ = impl.six_point(*row[:6], pyk.KIND_P_HYPERBOLA, row[6], row[7])
        acc += code
    return acc


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 120
    rows = []
    for label, workload, args in (
        (f"region grid {n}x{n}", grid_workload, (n,)),
        (f"random batch {n * n}", random_workload, (n * n,)),
    ):
        out_py, t_py = timed(workload, pyk, *args)
        if ck is not None:
            out_c, t_c = timed(workload, ck, *args)
            assert out_py == out_c, "backend mismatch"
            rows.append((label, t_py, t_c, t_py / t_c))
        else:
            rows.append((label, t_py, None, None))
    print(f"{'workload':24s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, t_py, t_c, sp in rows:
        if t_c is None:
            print(f"{label:24s} {t_py:9.3f}s {'-':>10s} {'-':>8s}")
        else:
            print(f"{label:24s} {t_py:9.3f}s {t_c:9.3f}s {sp:7.1f}x")
    if ck is None:
        print("compiled kernel not built; run: python setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
