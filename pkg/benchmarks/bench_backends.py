#!/usr/bin/env python3
"""Benchmark the numba and numpy backends on the hot paths.

Run:  python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from airyproc import airy, backend, fredholm, kernels


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def run_case(label, fn):
    row = {"case": label}
    for name in ("numba", "numpy"):
        if name == "numba" and not backend.HAS_NUMBA:
            row[name] = float("nan")
            continue
        backend.set_backend(name)
        fn()  # warm (JIT compile / allocate)
        row[name] = best_of(fn)
    return row


def main():
    rng = np.random.default_rng(0)
    xs_large = rng.uniform(-30.0, 30.0, 2_000_000)
    grid = np.linspace(-6.0, 14.0, 240)

    cases = [
        ("ai_values, 2e6 points", lambda: airy.ai_values(xs_large)),
        ("airy kernel matrix 240x240", lambda: kernels.airy_kernel_matrix(grid, grid)),
        ("lower block matrix 240x240, t=2", lambda: kernels.offdiag_lower_matrix(grid, grid, 2.0)),
        ("joint_det(0,-1,4), n=120", lambda: fredholm.joint_det(0.0, -1.0, 4.0)),
        ("f2_det(-2), n=120", lambda: fredholm.f2_det(-2.0)),
    ]

    print(f"{'case':36s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for label, fn in cases:
        row = run_case(label, fn)
        ratio = row["numpy"] / row["numba"] if row["numba"] == row["numba"] else float("nan")
        print(f"{label:36s} {row['numba'] * 1e3:9.2f}ms {row['numpy'] * 1e3:9.2f}ms {ratio:7.2f}x")


if __name__ == "__main__":
    main()
