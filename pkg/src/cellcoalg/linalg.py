"""Exact linear algebra: Smith normal form over the integers and helpers
over prime fields built on the row-reduction kernel."""

from __future__ import annotations

import numpy as np

from ._kernels import rref_mod_p


# integers ------------------------------------------------------------------

def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """Smith normal form of an integer matrix, with unimodular transforms.

    Returns ``(D, U, Uinv, V, Vinv)`` with ``U @ A @ V == D`` where ``D`` is
    diagonal with each diagonal entry dividing the next.  Works on Python
    ints throughout, so there is no overflow.
    """
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U, Uinv, V, Vinv = _identity(m), _identity(m), _identity(n), _identity(n)

    def row_add(i, j, c):  # row_i += c row_j
        if c == 0:
            return
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for r in Uinv:  # column_j -= c column_i
            r[j] -= c * r[i]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        M[i] = [-a for a in M[i]]
        U[i] = [-a for a in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def col_add(i, j, c):  # column_i += c column_j
        if c == 0:
            return
        for r in M:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]
        Vinv[j] = [a - c * b for a, b in zip(Vinv[j], Vinv[i])]

    def col_swap(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the remaining block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    row_add(i, t, -(M[i][t] // M[t][t]))
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    col_add(j, t, -(M[t][j] // M[t][t]))
                    if M[t][j]:
                        done = False
            if done:
                # divisibility: fold in any entry the pivot does not divide
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if M[i][j] % M[t][t]), None)
                if bad is None:
                    break
                row_add(t, bad[0], 1)
                continue
            # move a smaller remainder into pivot position
            best = None
            for i in range(t, m):
                if M[i][t] and (best is None or abs(M[i][t]) < abs(M[best][t])):
                    best = i
            row_swap(t, best)
            bestc = None
            for j in range(t, n):
                if M[t][j] and (bestc is None or abs(M[t][j]) < abs(M[t][bestc])):
                    bestc = j
            col_swap(t, bestc)
        if M[t][t] < 0:
            row_neg(t)
        t += 1
    return M, U, Uinv, V, Vinv


def matmul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_rank(A) -> int:
    D = smith_normal_form(A)[0]
    return sum(1 for d in diagonal(D) if d)


# prime fields --------------------------------------------------------------

def rank_mod_p(A, p: int) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref_mod_p(A, p)[1])


def nullspace_mod_p(A, p: int) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` over F_p, as the columns of the result."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0 or A.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref_mod_p(A, p)
    free = [j for j in range(n) if j not in set(piv.tolist())]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for c, f in enumerate(free):
        K[f, c] = 1
        for r, pc in enumerate(piv):
            K[pc, c] = (-R[r, f]) % p
    return K


def column_space_complement(B: np.ndarray, Z: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``Z`` that extend a basis of span(B) to a basis of span(B, Z).

    Pivots are taken in column order, so the choice is lexicographically
    least and reproducible.
    """
    if Z.shape[1] == 0:
        return Z
    M = np.concatenate([B, Z], axis=1) if B.shape[1] else Z
    _, piv = rref_mod_p(M, p)
    keep = [int(c) - B.shape[1] for c in piv if c >= B.shape[1]]
    return Z[:, keep]


def solve_mod_p(A: np.ndarray, b: np.ndarray, p: int):
    """One solution of ``A x = b`` over F_p, or ``None``."""
    A = np.asarray(A, dtype=np.int64)
    aug = np.concatenate([A, np.asarray(b, dtype=np.int64).reshape(-1, 1)], axis=1)
    R, piv = rref_mod_p(aug, p)
    n = A.shape[1]
    if len(piv) and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x
