"""Timing comparison of the compiled kernels against the numpy twin.

Runs the two hot paths on representative workloads: the feasibility sweep
over the centroids of a 512-grid (the acceptance-table workload) and the
forward frequency map on one million sampled strategies. Reports best-of-5
wall times and checks that both backends return bit-identical results.

Usage: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from trigame._kernels import _pykernels
from trigame.atlas import SimplexGrid
from trigame.geometry import Rng

try:
    from trigame._kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    q0, q1, q2 = SimplexGrid(512).centroids()
    u = Rng(seed=0).draws(1_000_000)
    p02, p01, p10 = u[:, 0].copy(), u[:, 1].copy(), u[:, 2].copy()

    workloads = [
        ("oracle_sweep, 512-grid (524288 cells)", lambda m: m.oracle_sweep(q0, q1, q2)),
        ("forward_map, 1e6 strategies", lambda m: m.forward_map(p02, p01, p10)),
    ]

    print(f"{'workload':40s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, call in workloads:
        t_py = best_of(lambda: call(_pykernels))
        if _ckernels is None:
            print(f"{name:40s} {t_py * 1e3:8.1f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_c = best_of(lambda: call(_ckernels))
        r_py, r_c = call(_pykernels), call(_ckernels)
        if isinstance(r_py, tuple):
            identical = all(np.array_equal(a, b) for a, b in zip(r_py, r_c))
        else:
            identical = np.array_equal(r_py, r_c)
        assert identical, f"backends disagree on {name}"
        print(f"{name:40s} {t_py * 1e3:8.1f}ms {t_c * 1e3:8.1f}ms {t_py / t_c:7.1f}x")
    if _ckernels is None:
        print("compiled extension not built; numpy twin only")
    else:
        print("outputs bit-identical across backends")


if __name__ == "__main__":
    main()
