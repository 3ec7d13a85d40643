#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Run from the repo root:

    python3 benchmarks/bench_kernels.py [-o results.json]

The same comparison can be forced package-wide by setting
SQUIDCAVITY_DISABLE_JIT=1 before importing squidcavity.
"""

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from squidcavity import _kernels

SEED = 20260823
WARMUP = 2
RUNS = 5


def random_hermitian(rng, n):
    m = rng.uniform(-3, 3, (n, n)) + 1j * rng.uniform(-3, 3, (n, n))
    return 0.5 * (m + m.conj().T)


def timed(func, runs=RUNS, warmup=WARMUP):
    for _ in range(warmup):
        func()
    times = []
    for _ in range(runs):
        start = time.perf_counter()
        func()
        times.append(time.perf_counter() - start)
    return {"min": min(times), "mean": sum(times) / len(times), "runs": times}


def bench_jacobi(batch=500, dim=6):
    rng = np.random.default_rng(SEED)
    mats = [random_hermitian(rng, dim) for _ in range(batch)]

    def run(driver):
        for m in mats:
            a = m.copy()
            v = np.eye(dim, dtype=np.complex128)
            driver(a, v, 1e-14 * np.linalg.norm(m), 60)

    out = {"batch": batch, "dim": dim}
    out["numpy"] = timed(lambda: run(_kernels._jacobi_cyclic_py))
    if _kernels.NUMBA_ENABLED:
        out["numba"] = timed(lambda: run(_kernels._jacobi_cyclic_jit))
        out["speedup"] = out["numpy"]["min"] / out["numba"]["min"]
    return out


def bench_scan(n_times=60000, batch=20):
    rng = np.random.default_rng(SEED + 1)
    cases = []
    for _ in range(batch):
        w = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
        lam = np.sort(rng.uniform(-3, 3, 6))
        cases.append((w, lam))
    times = np.linspace(1e-3, 200.0, n_times)

    def run_numpy():
        for w, lam in cases:
            _kernels.scan_probs_numpy(w, lam, times)

    out = {"n_times": n_times, "batch": batch}
    out["numpy"] = timed(run_numpy)
    if _kernels.NUMBA_ENABLED:
        p1 = np.empty(n_times)
        p2 = np.empty(n_times)
        p3 = np.empty(n_times)
        p4 = np.empty(n_times)

        def run_numba():
            for w, lam in cases:
                _kernels._scan_probs_loop_jit(w, lam, times, p1, p2, p3, p4)

        out["numba"] = timed(run_numba)
        out["speedup"] = out["numpy"]["min"] / out["numba"]["min"]
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-o", "--output", help="write JSON results to this path")
    args = parser.parse_args()

    results = {
        "numba_enabled": _kernels.NUMBA_ENABLED,
        "jacobi_eigensolver": bench_jacobi(),
        "probability_scan": bench_scan(),
    }
    text = json.dumps(results, indent=2)
    if args.output:
        Path(args.output).write_text(text + "\n")
        print(f"results written to {args.output}", file=sys.stderr)
    else:
        print(text)


if __name__ == "__main__":
    main()
