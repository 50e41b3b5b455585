#!/usr/bin/env python3
"""Compare the numba and pure-numpy int64 kernels.

    python benchmarks/bench_kernels.py [--n 5] [--c 3] [--repeat 200]

Reports seconds per call; smaller is better.
"""

import argparse
import timeit

import numpy as np

from malcev_forge import _kernels, linalg
from malcev_forge.grouplaw import GroupElement, check_malcev, family_fits_int64
from malcev_forge.quotient import build_quotient, generator_matrices


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--c", type=int, default=3)
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()

    mats = generator_matrices(build_quotient(args.n, args.c))
    d = mats[0].shape[0]
    rng = np.random.default_rng(0)
    t = linalg.product(mats, d)
    x = GroupElement(t, rng.integers(-9, 10, size=d))
    y = GroupElement(mats[0], rng.integers(-9, 10, size=d))
    safe = family_fits_int64(2**args.n, [t, mats[0]], 9)
    print(f"quotient n={args.n} c={args.c}: d={d}, {args.repeat} calls each\n")

    cases = {
        "matmul": lambda: _kernels.matmul_i64(t, t),
        "vecmat": lambda: _kernels.vecmat_i64(x.a, t),
        f"M_{args.n} law check": lambda: check_malcev(args.n, x, y, proven_safe=safe),
    }
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    for name, fn in cases.items():
        print(f"{name}:")
        for backend in backends:
            _kernels.set_backend(backend)
            fn()  # compile / warm caches
            secs = timeit.timeit(fn, number=args.repeat) / args.repeat
            print(f"  {backend:6s} {secs * 1e6:10.1f} us")
        print()


if __name__ == "__main__":
    main()
