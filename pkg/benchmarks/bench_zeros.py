"""Compare the compiled and numpy zero-finding kernels.

    python benchmarks/bench_zeros.py [--repeat 5]

Two workloads: one long zero table (Hadamard products need thousands of
zeros of a single function) and a cone spectrum enumeration, which makes many
short calls across increasing Bessel orders.
"""
import argparse
import timeit

import numpy as np

from conetorsion import bessel, _zeros_py
from conetorsion.bessel import ABSOLUTE, ConeSpectrumSpec, cone_spectrum_rows

try:
    from conetorsion import _zeros
except ImportError:
    _zeros = None


def long_table(kernel):
    return kernel.zeros(2.5, 1.0, True, 20000, 0.0, bessel.GRID_STEP)


def spectrum(kernel):
    saved = bessel._kernel
    bessel._kernel = kernel
    try:
        return cone_spectrum_rows(ConeSpectrumSpec(3, 1, ABSOLUTE, 1.0, 1.0, 2000.0))
    finally:
        bessel._kernel = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    kernels = [("python", _zeros_py)]
    if _zeros is not None:
        kernels.append(("cython", _zeros))
    else:
        print("compiled kernel not built; timing the fallback only")

    results = {}
    for label, work in (("long table (20000 zeros)", long_table), ("cone spectrum p=3, cutoff 2000", spectrum)):
        ref = None
        for name, kernel in kernels:
            best = min(timeit.repeat(lambda: work(kernel), number=1, repeat=args.repeat))
            out = work(kernel)
            vals = np.asarray(out if isinstance(out, np.ndarray) else [r[0] for r in out])
            if ref is None:
                ref = vals
            same = vals.shape == ref.shape and np.array_equal(vals, ref)
            results[(label, name)] = best
            print(f"{label:<32} {name:<7} {best * 1e3:9.1f} ms  {len(vals):7d} values  identical={same}")
        if len(kernels) == 2:
            print(f"{'':<32} speedup {results[(label, 'python')] / results[(label, 'cython')]:.2f}x")


if __name__ == "__main__":
    main()
