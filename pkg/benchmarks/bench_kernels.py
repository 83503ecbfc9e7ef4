"""Time the compiled kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--size 400] [--repeat 3]

Both paths are checked to agree before anything is timed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cellcoalg import _kernels as K


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_rref(size: int, p: int, repeat: int, rng) -> dict:
    A = rng.integers(0, p, size=(size, size), dtype=np.int64)
    R1, piv1 = K.rref_mod_p_numpy(A, p)
    row = {"kernel": f"rref_mod_{p} {size}x{size}",
           "numpy_s": _best(lambda: K.rref_mod_p_numpy(A, p), repeat)}
    if K.HAVE_NUMBA:
        R2, piv2 = K.rref_mod_p_jit(A, p)
        assert np.array_equal(R1, R2) and np.array_equal(piv1, piv2)
        row["numba_s"] = _best(lambda: K.rref_mod_p_jit(A, p), repeat)
    return row


def bench_products(n_terms: int, p: int, repeat: int, rng) -> dict:
    n_in, n_out, r = 5000, 2000, p
    vec = rng.integers(0, p, size=n_in, dtype=np.int64)
    factors = rng.integers(0, n_in, size=(n_terms, r), dtype=np.int64)
    coeffs = rng.integers(1, p, size=n_terms, dtype=np.int64)
    owners = rng.integers(0, n_out, size=n_terms, dtype=np.int64)
    ref = K.eval_products_numpy(vec, factors, coeffs, owners, n_out, p)
    row = {"kernel": f"eval_products p={p} terms={n_terms}",
           "numpy_s": _best(lambda: K.eval_products_numpy(vec, factors, coeffs, owners, n_out, p),
                            repeat)}
    if K.HAVE_NUMBA:
        got = K._eval_products_jit(vec, factors, coeffs, owners, n_out, p)
        assert np.array_equal(ref, got)
        row["numba_s"] = _best(
            lambda: K._eval_products_jit(vec, factors, coeffs, owners, n_out, p), repeat)
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=400)
    ap.add_argument("--terms", type=int, default=500_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    rows = [bench_rref(args.size, 2, args.repeat, rng), bench_rref(args.size, 3, args.repeat, rng),
            bench_products(args.terms, 2, args.repeat, rng),
            bench_products(args.terms, 3, args.repeat, rng)]
    print(f"{'kernel':40s} {'numpy [s]':>10s} {'numba [s]':>10s}")
    for row in rows:
        nb = f"{row['numba_s']:10.4f}" if "numba_s" in row else f"{'n/a':>10s}"
        print(f"{row['kernel']:40s} {row['numpy_s']:10.4f} {nb}")


if __name__ == "__main__":
    main()
