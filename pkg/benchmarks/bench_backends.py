"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_backends.py --max-n 10 --reps 20

Prints one CSV row per (kernel, n, backend) with the best-of-reps time in
microseconds and the speedup of numba over numpy.
"""

import argparse
import time

import numpy as np

from hyperxor import kernels, preset, tables
from hyperxor.diagonal import require_diagonal


def best_us(fn, reps):
    fn()  # compile / warm caches
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best * 1e6


def cases(n, rng):
    sig = preset(f"m({n})")
    dim = sig.dim
    x = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    y = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    s = tables(sig).s if n <= 12 else None
    nu = require_diagonal(sig).nu
    out = {
        "fwht": lambda: kernels.fwht(x.copy()),
        "diag_product": lambda: kernels.diag_product(x, y, nu),
        "sign_table": lambda: kernels.sign_table(n, 0b1010 & (dim - 1), 0, True),
    }
    if s is not None:
        out["mul_table"] = lambda: kernels.mul_table(x, y, s)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--reps", type=int, default=10)
    args = ap.parse_args(argv)
    if "numba" not in kernels.BACKENDS:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print("kernel,n,numba_us,numpy_us,numba_speedup")
    for n in range(args.min_n, args.max_n + 1):
        fns = cases(n, rng)
        for name, fn in fns.items():
            times = {}
            for backend in ("numba", "numpy"):
                with kernels.use_backend(backend):
                    times[backend] = best_us(fn, args.reps)
            print(f"{name},{n},{times['numba']:.1f},{times['numpy']:.1f},{times['numpy'] / times['numba']:.1f}")


if __name__ == "__main__":
    main()
