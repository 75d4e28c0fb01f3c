"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python3 benchmarks/bench_kernels.py

Covers the three primitives directly and one realistic end-to-end
workload (a full stabilization pipeline on generated resolutions).
"""

import importlib
import os
import random
import sys
import time


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_primitives():
    from chaincert._kernels import _pure

    try:
        from chaincert._kernels import _speedups
    except ImportError:
        print("compiled kernels unavailable; build with: pip install -e . --no-build-isolation")
        return

    rng = random.Random(0)
    rows = []

    for dim in (40, 80, 120):
        a = [rng.randint(-50, 50) for _ in range(dim * dim)]
        b = [rng.randint(-50, 50) for _ in range(dim * dim)]
        t_pure = _time(lambda: _pure.matmul_int(a, b, dim, dim, dim))
        t_fast = _time(lambda: _speedups.matmul_int(a, b, dim, dim, dim))
        assert _pure.matmul_int(a, b, dim, dim, dim) == _speedups.matmul_int(a, b, dim, dim, dim)
        rows.append((f"matmul_int  {dim}x{dim}", t_pure, t_fast))

    p = 1000003
    for dim in (40, 80, 120):
        a = [rng.randrange(p) for _ in range(dim * dim)]
        b = [rng.randrange(p) for _ in range(dim * dim)]
        t_pure = _time(lambda: _pure.matmul_mod(a, b, dim, dim, dim, p))
        t_fast = _time(lambda: _speedups.matmul_mod(a, b, dim, dim, dim, p))
        assert _pure.matmul_mod(a, b, dim, dim, dim, p) == _speedups.matmul_mod(a, b, dim, dim, dim, p)
        rows.append((f"matmul_mod  {dim}x{dim}", t_pure, t_fast))

    for dim in (60, 120):
        a = [rng.randrange(p) for _ in range(dim * dim)]
        t_pure = _time(lambda: _pure.rref_mod(a, dim, dim, p))
        t_fast = _time(lambda: _speedups.rref_mod(a, dim, dim, p))
        assert _pure.rref_mod(a, dim, dim, p) == _speedups.rref_mod(a, dim, dim, p)
        rows.append((f"rref_mod    {dim}x{dim}", t_pure, t_fast))

    print(f"{'kernel':<22}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, t_pure, t_fast in rows:
        print(f"{name:<22}{t_pure:>12.4f}{t_fast:>14.4f}{t_pure / t_fast:>9.1f}x")


def bench_pipeline():
    """Same stabilization workload under both kernel selections."""

    def run_once():
        from chaincert.matrix import Matrix
        from chaincert.resolution import ModulePresentation, generate_resolution
        from chaincert.rings import PrimeField
        from chaincert.stabilize import schanuel_check, total_equivalence, verify_certificate

        field = PrimeField(5)
        pres = ModulePresentation(field, 3, Matrix(field, 3, 0, ()))
        for seed in range(3):
            res_p = generate_resolution(pres, n=5, max_rank=14, seed=seed)
            res_q = generate_resolution(pres, n=5, max_rank=14, seed=seed + 100)
            cert = total_equivalence(res_p, res_q)
            assert verify_certificate(cert).ok
            assert schanuel_check(cert).ok

    timings = {}
    for mode, env in (("compiled", ""), ("pure", "1")):
        os.environ["CHAINCERT_PURE_KERNELS"] = env
        for name in [m for m in list(sys.modules) if m.startswith("chaincert")]:
            del sys.modules[name]
        importlib.invalidate_caches()
        from chaincert import _kernels

        if _kernels.IMPLEMENTATION != mode:
            print(f"(skipping {mode}: selected {_kernels.IMPLEMENTATION})")
            continue
        timings[mode] = _time(run_once, repeats=1)
    os.environ.pop("CHAINCERT_PURE_KERNELS", None)

    if len(timings) == 2:
        print(f"\n{'pipeline (3 certificates, F_5, n=5, ranks<=14)':<46}")
        print(f"{'pure':<10}{timings['pure']:>10.3f} s")
        print(f"{'compiled':<10}{timings['compiled']:>10.3f} s")
        print(f"{'speedup':<10}{timings['pure'] / timings['compiled']:>9.1f}x")


if __name__ == "__main__":
    bench_primitives()
    bench_pipeline()
