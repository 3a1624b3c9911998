"""Timing comparison of the compiled int64 kernels against the pure-Python
arbitrary-precision fallback, on workloads shaped like the library's hot
paths (inclusion-matrix products and modular elimination certificates).

Run directly: python benchmarks/bench_kernels.py
"""

import random
import time

from flaglap.kernels import BACKEND, _purepy

try:
    import numpy as np

    from flaglap.kernels import _fast
except ImportError:
    _fast = None


def rand_matrix(rows, cols, bound, rng):
    return [[rng.randrange(-bound, bound + 1) for _ in range(cols)]
            for _ in range(rows)]


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = random.Random(5)
    print(f"selected backend: {BACKEND}")
    print()
    print(f"{'workload':<34} {'pure-python':>12} {'compiled':>12} {'speedup':>8}")
    for size in (50, 100, 200, 400):
        a = rand_matrix(size, size, 1000, rng)
        b = rand_matrix(size, size, 1000, rng)
        t_py = timeit(lambda: _purepy.matmul_int(a, b))
        line = f"{'matmul ' + str(size) + 'x' + str(size):<34} {t_py:>11.4f}s"
        if _fast is not None:
            na, nb = np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)
            t_c = timeit(lambda: _fast.matmul_i64(na, nb))
            line += f" {t_c:>11.4f}s {t_py / t_c:>7.1f}x"
        print(line)
    p = 2147483647
    for size in (50, 100, 200):
        a = rand_matrix(size, size, 10**6, rng)
        t_py = timeit(lambda: _purepy.det_rank_mod(a, p))
        label = f"det/rank mod p {size}x{size}"
        line = f"{label:<34} {t_py:>11.4f}s"
        if _fast is not None:
            na = np.array(a, dtype=np.int64)
            t_c = timeit(lambda: _fast.det_rank_mod(na, p))
            line += f" {t_c:>11.4f}s {t_py / t_c:>7.1f}x"
        print(line)
    if _fast is None:
        print("\ncompiled extension unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
