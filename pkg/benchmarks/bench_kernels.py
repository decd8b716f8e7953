"""Compare the compiled and numpy kernel backends on the two hot paths:

* the exhaustive even-chromatic K4 quadruple scan over a host coloring, and
* the decomposability-table recurrence used by the census.

Run as: python3 benchmarks/bench_kernels.py [--n 128] [--vmax 7] [--repeats 3]
"""

import argparse
import time

import numpy as np

from graphcodes import _kernels_py
from graphcodes._backend import BACKEND
from graphcodes.colorings import build_k4_coloring, color_matrix

try:
    from graphcodes import _kernels
except ImportError:  # extension not built on this installation
    _kernels = None


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def k4_scan(impl, colors):
    return impl.find_even_k4_quadruple(colors)


def census_tables(impl, vmax: int):
    tables = [np.array([True]), np.array([True])]
    for k in range(2, vmax + 1):
        tables.append(
            np.asarray(impl.decomposability_step(k, tables[k - 1], tables[k - 2]))
        )
    return tables


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=128,
                        help="host size for the K4 quadruple scan")
    parser.add_argument("--vmax", type=int, default=7,
                        help="largest vertex count for the census recurrence")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repetitions (best is reported)")
    args = parser.parse_args()

    backends = [("numpy", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("compiled", _kernels))
    print(f"active package backend: {BACKEND}")
    print(f"K4 scan host n={args.n} (full scan of C(n,4) quadruples); "
          f"census up to v={args.vmax}")

    colors = color_matrix(build_k4_coloring(args.n))
    results = {}
    for name, impl in backends:
        scan = best_of(lambda: k4_scan(impl, colors), args.repeats)
        census = best_of(lambda: census_tables(impl, args.vmax), args.repeats)
        results[name] = (scan, census)
        print(f"{name:>9}:  k4-scan {scan * 1e3:9.2f} ms   census {census * 1e3:9.2f} ms")

    if len(backends) == 2:
        scan_np, census_np = results["numpy"]
        scan_c, census_c = results["compiled"]
        print(f"  speedup:  k4-scan {scan_np / scan_c:8.1f}x    census "
              f"{census_np / census_c:8.1f}x")
        same_scan = k4_scan(_kernels, colors) == k4_scan(_kernels_py, colors)
        tables_c = census_tables(_kernels, args.vmax)
        tables_np = census_tables(_kernels_py, args.vmax)
        same_census = all(
            np.array_equal(a, b) for a, b in zip(tables_c, tables_np)
        )
        if not (same_scan and same_census):
            print("BACKENDS DISAGREE — investigate before trusting timings")
            return 1
        print("backends agree on both kernels")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
