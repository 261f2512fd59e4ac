"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each workload calls through ``stfib.kernels`` after switching the implementation,
so it measures exactly what library code sees.
"""

import argparse
import sys
import timeit

from stfib import kernels
from stfib.catalan import gf_coefficients
from stfib.deformed import DeformParams, series_terms
from stfib.exact import S, T
from stfib.real_index import EvalContext

C32 = EvalContext(3.0, -2.0)
ARGS = C32._kargs()
P = dict(((S + T * 3 + 1) ** 12).items())
Q = dict(((S * 2 - T + 5) ** 10).items())
PQ = kernels._kernels_py.poly_mul(P, Q)
COEFFS = [complex(k % 7, -k % 3) / (k + 1) for k in range(400)]

WORKLOADS = {
    "poly_mul (deg 12 x deg 10)": lambda: kernels.poly_mul(P, Q),
    "poly_exact_div": lambda: kernels.poly_exact_div(PQ, Q),
    "fibonomial_row (alpha 2.5, N 200)": lambda: kernels.fibonomial_row(2.5, 200, *ARGS),
    "unit_series_coeffs (N 400)": lambda: kernels.unit_series_coeffs(0.5, 400, 1.5, *ARGS),
    "horner (400 terms)": lambda: kernels.horner(COEFFS, 0.3 + 0.1j),
    "series_terms (N 200, u != 1)": lambda: series_terms(2.5, 1.0, 0.3, DeformParams(1.2, 0.7), C32, 200),
    "gf_coefficients catalan (N 10)": lambda: gf_coefficients("catalan", 10, 2.0, C32),
}


def bench(fn, repeat):
    number, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    impls = kernels.available()
    if "cython" not in impls:
        print("compiled kernels are not built; only the Python timings are shown", file=sys.stderr)
    before = kernels.IMPLEMENTATION
    results = {}
    try:
        for impl in impls:
            kernels.use(impl)
            results[impl] = {name: bench(fn, args.repeat) for name, fn in WORKLOADS.items()}
    finally:
        kernels.use(before)
    header = f"{'workload':36s}" + "".join(f"{impl:>14s}" for impl in impls)
    if len(impls) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for name in WORKLOADS:
        line = f"{name:36s}" + "".join(f"{results[i][name] * 1e6:11.1f} us" for i in impls)
        if len(impls) == 2:
            line += f"{results['python'][name] / results['cython'][name]:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
