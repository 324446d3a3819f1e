#!/usr/bin/env python3
"""Compare the compiled evaluation/relaxation kernels with the pure-Python
fallback.

The compiled backend is selected automatically at import; setting
MINSURF_NO_EXT=1 forces the fallback.  This script loads both explicitly
and times them on the same workloads, so a single run reports the ratio.

Usage: python benchmarks/bench_kernels.py [--points N] [--sweeps K]
"""

import argparse
import importlib
import time

import numpy as np

from minsurf import _kernels
from minsurf import expr as ex
from minsurf._kernels import _fallback


def _load_compiled():
    try:
        return importlib.import_module("minsurf._kernels._core")
    except ImportError:
        return None


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_eval(backend, code, consts, depth, zs):
    return _time(lambda: backend.eval_program(code, consts, depth, zs))


def bench_sweep(backend, values, fixed, sweeps):
    def run():
        v = values.copy()
        for _ in range(sweeps):
            backend.redblack_sweep(v, fixed)

    return _time(run, repeats=3)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--sweeps", type=int, default=100)
    args = ap.parse_args()

    compiled = _load_compiled()
    print(f"active backend: {_kernels.BACKEND}")
    if compiled is None:
        print("compiled extension unavailable; showing fallback only")

    e = ex.parse("exp(i*z)*(1 - z^2)/2 + sinh(z)/(z - 3) + z^5")
    rng = np.random.default_rng(0)
    zs = np.ascontiguousarray(rng.standard_normal(args.points) + 1j * rng.standard_normal(args.points))
    code, consts, depth = e._code, e._consts, e._depth

    t_py = bench_eval(_fallback, code, consts, depth, zs)
    print(f"expression evaluation, one batch of {args.points} points:")
    print(f"  fallback: {t_py * 1e3:8.2f} ms")
    if compiled is not None:
        t_c = bench_eval(compiled, code, consts, depth, zs)
        out_c = compiled.eval_program(code, consts, depth, zs)
        out_py = _fallback.eval_program(code, consts, depth, zs)
        assert np.allclose(out_c, out_py, rtol=1e-14), "backends disagree"
        print(f"  compiled: {t_c * 1e3:8.2f} ms   ({t_py / t_c:.1f}x)")

    # the quadrature hot path evaluates many 15-point panels, where
    # per-call overhead dominates and the compiled VM shines
    panel = zs[:15].copy()
    reps = 10_000

    def many(backend):
        def run():
            for _ in range(reps):
                backend.eval_program(code, consts, depth, panel)

        return _time(run, repeats=3)

    t_py = many(_fallback)
    print(f"expression evaluation, {reps} batches of 15 points:")
    print(f"  fallback: {t_py * 1e3:8.2f} ms")
    if compiled is not None:
        t_c = many(compiled)
        print(f"  compiled: {t_c * 1e3:8.2f} ms   ({t_py / t_c:.1f}x)")

    m = 257
    values = np.ascontiguousarray(rng.standard_normal((m, m, 3)))
    fixed = np.zeros((m, m), dtype=np.uint8)
    fixed[0, :] = fixed[-1, :] = fixed[:, 0] = fixed[:, -1] = 1
    t_py = bench_sweep(_fallback, values, fixed, args.sweeps)
    print(f"red-black relaxation, {m}x{m} grid, {args.sweeps} sweeps:")
    print(f"  fallback: {t_py * 1e3:8.2f} ms")
    if compiled is not None:
        t_c = bench_sweep(compiled, values, fixed, args.sweeps)
        print(f"  compiled: {t_c * 1e3:8.2f} ms   ({t_py / t_c:.1f}x)")


if __name__ == "__main__":
    main()
