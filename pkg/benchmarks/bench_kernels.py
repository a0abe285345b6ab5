"""Benchmark the compiled field-summation kernel against the NumPy fallback.

    python benchmarks/bench_kernels.py [n_events] [n_waves]
"""

import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from rindler_probe import kernels  # noqa: E402


def timeit(fn, *args, repeats=10):
    fn(*args)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - t0) / repeats


def main():
    n_events = int(sys.argv[1]) if len(sys.argv) > 1 else 1441
    n_waves = int(sys.argv[2]) if len(sys.argv) > 2 else 4096
    rng = np.random.default_rng(0)
    t = rng.normal(size=n_events)
    xyz = rng.normal(size=(n_events, 3))
    k = rng.normal(size=(n_waves, 3))
    omega = np.abs(rng.normal(size=n_waves))
    a_re = rng.normal(size=n_waves)
    a_im = rng.normal(size=n_waves)

    print(f"workload: {n_events} events x {n_waves} waves "
          f"({n_events * n_waves / 1e6:.1f}M mode evaluations)")
    print(f"selected backend: {kernels.BACKEND}")

    for half_space in (False, True):
        label = "half-space" if half_space else "free space"
        t_np = timeit(kernels.field_sum_numpy, t, xyz, k, omega, a_re, a_im, half_space)
        print(f"  numpy  ({label}): {t_np * 1e3:8.1f} ms")
        if kernels.BACKEND == "cython":
            t_cy = timeit(kernels.field_sum, t, xyz, k, omega, a_re, a_im, half_space)
            a = kernels.field_sum(t, xyz, k, omega, a_re, a_im, half_space)
            b = kernels.field_sum_numpy(t, xyz, k, omega, a_re, a_im, half_space)
            rel = np.max(np.abs(a - b)) / np.max(np.abs(b))
            print(f"  cython ({label}): {t_cy * 1e3:8.1f} ms   "
                  f"(speedup {t_np / t_cy:.2f}x, agreement {rel:.1e})")
        else:
            print("  cython backend not built (python setup.py build_ext --inplace)")


if __name__ == "__main__":
    main()
