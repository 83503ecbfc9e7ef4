"""Hot numeric loops, compiled with numba when available.

Set ``CELLCOALG_NUMBA=0`` to force the pure numpy path.  Both paths take
and return the same int64 arrays; entries are residues mod a small prime.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("CELLCOALG_NUMBA", "1") != "0"


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


# row reduction -------------------------------------------------------------

def rref_mod_p_numpy(A: np.ndarray, p: int):
    """Reduced row echelon form over F_p; returns ``(R, pivot_columns)``."""
    R = np.array(A, dtype=np.int64) % p
    inv = _inverse_table(p)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * inv[R[r, c]]) % p
        f = R[:, c].copy()
        f[r] = 0
        R -= np.outer(f, R[r])
        R %= p
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


if HAVE_NUMBA:
    @njit(cache=True)
    def _rref_mod_p_jit(R, p, inv, pivots):
        rows, cols = R.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = -1
            for i in range(r, rows):
                if R[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(cols):
                    t = R[r, j]
                    R[r, j] = R[k, j]
                    R[k, j] = t
            s = inv[R[r, c]]
            for j in range(cols):
                R[r, j] = (R[r, j] * s) % p
            for i in range(rows):
                if i != r and R[i, c] != 0:
                    f = R[i, c]
                    for j in range(cols):
                        R[i, j] = (R[i, j] - f * R[r, j]) % p
            pivots[r] = c
            r += 1
        return r

    @njit(cache=True)
    def _eval_products_jit(vec, factors, coeffs, owners, n_out, p):
        out = np.zeros(n_out, dtype=np.int64)
        n_terms, r = factors.shape
        for t in range(n_terms):
            v = coeffs[t]
            for j in range(r):
                v = (v * vec[factors[t, j]]) % p
                if v == 0:
                    break
            if v != 0:
                o = owners[t]
                out[o] = (out[o] + v) % p
        return out


def rref_mod_p_jit(A: np.ndarray, p: int):
    R = np.array(A, dtype=np.int64) % p
    pivots = np.zeros(min(R.shape) if R.size else 0, dtype=np.int64)
    rank = _rref_mod_p_jit(R, p, _inverse_table(p), pivots)
    return R, pivots[:rank].copy()


def rref_mod_p(A: np.ndarray, p: int):
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return A.reshape(A.shape) % p, np.zeros(0, dtype=np.int64)
    if USE_NUMBA:
        return rref_mod_p_jit(A, p)
    return rref_mod_p_numpy(A, p)


# evaluation of tensor products of cochains ---------------------------------

def eval_products_numpy(vec, factors, coeffs, owners, n_out, p):
    """``out[owners[t]] += coeffs[t] * prod_j vec[factors[t, j]]`` mod p."""
    out = np.zeros(n_out, dtype=np.int64)
    if len(coeffs) == 0:
        return out
    v = coeffs % p
    for j in range(factors.shape[1]):
        v = (v * vec[factors[:, j]]) % p
    np.add.at(out, owners, v)
    return out % p


def eval_products(vec, factors, coeffs, owners, n_out: int, p: int) -> np.ndarray:
    vec = np.asarray(vec, dtype=np.int64) % p
    if USE_NUMBA and len(coeffs):
        return _eval_products_jit(vec, factors, coeffs, owners, n_out, p)
    return eval_products_numpy(vec, factors, coeffs, owners, n_out, p)
