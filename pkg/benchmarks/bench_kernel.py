"""Compare the compiled and pure-python row-reduction kernels.

Two workloads:
  * raw kernel calls on random integer matrices of a few shapes, and
  * the dominant end-to-end computation, the invariant bivector space of
    the symmetric quotient of gl(n) for n = 3, 4, which stacks one large
    linear system per isotropy generator.

Run from the repository root:

    python3 benchmarks/bench_kernel.py
"""

import random
import statistics
import time

from lieps import _rref_py

try:
    from lieps import _rref_c
except ImportError:
    _rref_c = None

from lieps.catalog import builtin, realize
from lieps.invariants import invariant_bivectors


def _time(fn, repeats=5):
    best = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return min(best), statistics.median(best)


def bench_raw_kernels():
    rng = random.Random(12345)
    shapes = [(30, 30), (60, 90), (120, 105), (210, 210)]
    print("raw kernel, random integer matrices (entries in [-9, 9])")
    print(f"{'shape':>12} {'python':>12} {'c':>12} {'speedup':>9}")
    for nrows, ncols in shapes:
        rows = [[rng.randint(-9, 9) for _ in range(ncols)] for _ in range(nrows)]
        py_best, _ = _time(lambda: _rref_py.rref_int_rows(rows, ncols))
        if _rref_c is None:
            print(f"{nrows}x{ncols:<6} {py_best * 1e3:>10.2f}ms {'n/a':>12}")
            continue
        c_best, _ = _time(lambda: _rref_c.rref_int_rows(rows, ncols))
        ratio = py_best / c_best if c_best else float("inf")
        print(
            f"{f'{nrows}x{ncols}':>12} {py_best * 1e3:>10.2f}ms "
            f"{c_best * 1e3:>10.2f}ms {ratio:>8.1f}x"
        )
        same_py = _rref_py.rref_int_rows(rows, ncols)
        same_c = _rref_c.rref_int_rows(rows, ncols)
        assert [list(r) for r in same_py[0]] == [list(r) for r in same_c[0]]
        assert list(same_py[1]) == list(same_c[1])


def bench_invariant_spaces():
    print()
    print("end to end: invariant bivector space of the gl(n) symmetric quotient")
    print("(kernel chosen at import; this process uses backend "
          f"{'c' if _rref_c is not None else 'python'} via lieps.exact)")
    from lieps.exact import BACKEND

    print(f"lieps.exact.BACKEND = {BACKEND}")
    for n in (3, 4):
        L, iso = realize(builtin("gl_sym", {"n": n}))
        best, med = _time(lambda: invariant_bivectors(iso), repeats=3)
        print(f"gl_sym({n}): best {best:.3f}s, median {med:.3f}s")


if __name__ == "__main__":
    bench_raw_kernels()
    bench_invariant_spaces()
