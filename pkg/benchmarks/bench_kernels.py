#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure-Python twin.

The kernels sit inside every outage-power inversion (bisection over the
non-central chi-squared CDF), so they dominate the runtime of quantile
batches and of sweeps whose configs defeat the per-sweep quantile cache.

Usage: python benchmarks/bench_kernels.py
"""

import time

from leo_cache_sim import _kernels
from leo_cache_sim._kernels import _pure

try:
    from leo_cache_sim._kernels import _ncx2
except ImportError:
    _ncx2 = None

CDF_CASES = [(x / 10.0, lam) for lam in (0.0, 1.0, 10.0, 100.0) for x in range(1, 400)]
QUANTILE_CASES = [
    (p, lam) for lam in (0.0, 0.5, 1.0, 5.0, 10.0, 50.0) for p in (0.01, 0.05, 0.2, 0.5)
]


def time_fn(fn, reps):
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - start) / reps


def bench_backend(mod, reps_cdf=20, reps_q=20):
    def cdf_batch():
        for x, lam in CDF_CASES:
            mod.ncx2_cdf(x, lam)

    def quantile_batch():
        for p, lam in QUANTILE_CASES:
            mod.ncx2_quantile(p, lam)

    return time_fn(cdf_batch, reps_cdf), time_fn(quantile_batch, reps_q)


def bench_sweep():
    """End-to-end sweep timing on the active backend."""
    import sys
    from pathlib import Path

    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
    from conftest import make_reference_cfg

    from leo_cache_sim import Scenario, SweepSpec, sweep

    cfg = make_reference_cfg()
    start = time.perf_counter()
    for scn in Scenario:
        sweep(cfg, SweepSpec(scenario=scn))
    return time.perf_counter() - start


def main():
    print(f"active backend: {_kernels.backend()}")
    print(f"{len(CDF_CASES)} CDF evaluations and "
          f"{len(QUANTILE_CASES)} quantile inversions per batch\n")

    t_cdf_pure, t_q_pure = bench_backend(_pure)
    rows = [("pure", t_cdf_pure, t_q_pure)]
    if _ncx2 is not None:
        t_cdf_c, t_q_c = bench_backend(_ncx2, reps_cdf=100, reps_q=100)
        rows.append(("compiled", t_cdf_c, t_q_c))

    print(f"{'backend':<10} {'cdf batch':>12} {'quantile batch':>16}")
    for name, t_cdf, t_q in rows:
        print(f"{name:<10} {t_cdf * 1e3:>9.2f} ms {t_q * 1e3:>13.2f} ms")
    if _ncx2 is not None:
        print(f"\nspeedup: cdf {t_cdf_pure / t_cdf_c:.1f}x, "
              f"quantile {t_q_pure / t_q_c:.1f}x")
    else:
        print("\ncompiled backend not built; run "
              "`python setup.py build_ext --inplace` to compare")

    print(f"\nreference sweep, all scenarios ({_kernels.backend()} backend): "
          f"{bench_sweep():.2f} s")


if __name__ == "__main__":
    main()
