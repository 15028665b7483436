#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Usage:
  python benchmarks/bench_kernels.py [--dims 2 3 4] [--iters 2000]

Times the four triple products and the generic scheme contraction on random
inputs, per backend, and prints microseconds per call.  The compiled path
matters because the acceptance suite and the scheme search evaluate tens of
thousands of products on tiny (n <= 4) operands, where per-call overhead
dominates the flop count.
"""

import argparse
import time

from ternalg import _kernels_py, random_hypermatrix
from ternalg.ternary import CANONICAL_SCHEMES

try:
    from ternalg import _kernels
except ImportError:
    _kernels = None

PRODUCTS = ("product_p1", "product_p2", "product_p3", "product_p4")


def time_call(fn, args, iters):
    fn(*args)  # warm up
    start = time.perf_counter()
    for _ in range(iters):
        fn(*args)
    return (time.perf_counter() - start) / iters * 1e6


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    parser.add_argument("--iters", type=int, default=2000)
    args = parser.parse_args()

    backends = [("numpy", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("compiled kernels not available; timing the fallback only\n")

    spec = CANONICAL_SCHEMES["P4"].spec()
    header = f"{'kernel':<16}{'dim':>4}" + "".join(
        f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for dim in args.dims:
        a, b, c = (random_hypermatrix(dim, s) for s in (1, 2, 3))
        for kernel in PRODUCTS + ("scheme_product",):
            call_args = (a, b, c, spec) if kernel == "scheme_product" else (a, b, c)
            row = f"{kernel:<16}{dim:>4}"
            times = []
            for _, mod in backends:
                us = time_call(getattr(mod, kernel), call_args, args.iters)
                times.append(us)
                row += f"{us:>10.2f}us"
            if len(times) == 2:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)
        print()


if __name__ == "__main__":
    main()
