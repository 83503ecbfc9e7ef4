"""Cohomology of finite complexes, cup products and Steenrod operations.

Cochains are dense vectors over the cells of one degree: ``int64`` residues
over a prime field, Python ints or Fractions over the integers and the
rationals.  The coboundary is ``(delta a)(x) = a(d x)``, and a tensor
product of cochains is evaluated without Koszul signs, so

* ``(a cup b)(x) = sum a(x') b(x'')`` over the coproduct of x
  (Alexander-Whitney on simplices, Serre on cubes),
* ``Sq^k(a) = (a (x) a) o psi(2)(e_{q-k})`` for ``|a| = q``,
* ``P^s(a)`` and ``beta P^s(a)`` use ``a^{(x)p} o psi(p)(e_{(q-2s)(p-1)-e})``.

Every operation is evaluated cell by cell: the value of ``psi`` on a cell
is the image of its value on the cell's own standard simplex or cube.
Odd-prime operations come in two flavours.  The raw one is the formula
above.  The normalized one divides by the scalar ``c(q)`` by which the raw
``P^0`` acts on degree q, so that ``P^0 = id``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import numpy as np

from . import _kernels
from .einfty import psi
from .linalg import (column_space_complement, nullspace_mod_p, smith_normal_form,
                     solve_mod_p, diagonal)
from .scalars import RingTag, is_prime, F2


class PreconditionError(ValueError):
    """Inputs violate the stated requirements of an operation."""


# cochains ---------------------------------------------------------------------

def _zeros(ring: RingTag, n: int) -> np.ndarray:
    if ring.kind == "F":
        return np.zeros(n, dtype=np.int64)
    return np.array([ring.zero()] * n, dtype=object)


class Cochain:
    """A ``degree``-cochain on ``complex`` with coefficients in ``ring``."""

    __slots__ = ("complex", "degree", "values", "ring")

    def __init__(self, complex, degree: int, values, ring: RingTag):
        n = len(complex.cells(degree))
        if ring.kind == "F":
            vals = np.asarray(values, dtype=np.int64).reshape(-1) % ring.p
        else:
            vals = np.array([ring.coerce(v) for v in values], dtype=object).reshape(-1)
        if vals.size != n:
            raise ValueError(f"degree-{degree} cochain needs {n} values, got {vals.size}")
        self.complex = complex
        self.degree = degree
        self.values = vals
        self.ring = ring

    @classmethod
    def zero(cls, complex, degree: int, ring: RingTag) -> "Cochain":
        return cls(complex, degree, _zeros(ring, len(complex.cells(degree))), ring)

    @classmethod
    def from_cells(cls, complex, degree: int, mapping: dict, ring: RingTag) -> "Cochain":
        idx = complex.index(degree)
        vals = _zeros(ring, len(idx))
        for cell, v in mapping.items():
            vals[idx[tuple(cell)]] = ring.coerce(v)
        return cls(complex, degree, vals, ring)

    @classmethod
    def unit(cls, complex, ring: RingTag) -> "Cochain":
        """The degree-0 cocycle taking the value 1 on every vertex."""
        return cls(complex, 0, [ring.one()] * len(complex.cells(0)), ring)

    def value(self, cell):
        return self.values[self.complex.index(self.degree)[cell]]

    def support(self) -> dict:
        cells = self.complex.cells(self.degree)
        return {cells[i]: v for i, v in enumerate(self.values) if v != 0}

    def _same(self, other: "Cochain"):
        if other.ring != self.ring:
            raise PreconditionError("cochains over different rings")
        if other.complex is not self.complex or other.degree != self.degree:
            raise PreconditionError("cochains on different complexes or degrees")

    def _wrap(self, vals) -> "Cochain":
        return Cochain(self.complex, self.degree, vals, self.ring)

    def __add__(self, other):
        self._same(other)
        return self._wrap(self.values + other.values)

    def __sub__(self, other):
        self._same(other)
        return self._wrap(self.values - other.values)

    def __neg__(self):
        return self._wrap(-self.values)

    def scale(self, c) -> "Cochain":
        c = self.ring.coerce(c)
        return self._wrap(self.values * c)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (other.complex is self.complex and other.degree == self.degree
                and other.ring == self.ring and bool(np.all(self.values == other.values)))

    def is_zero(self) -> bool:
        return not np.any(self.values != 0)

    def serialize(self) -> list:
        return [[self.complex.cell_to_json(c), self.ring.to_json(v)]
                for c, v in self.support().items()]

    def __repr__(self):
        return f"Cochain(degree={self.degree}, support={len(self.support())})"


def coboundary_entries(complex, d: int) -> dict:
    """``{(row, col): coeff}`` for ``delta: C^d -> C^{d+1}``."""
    out = {}
    idx = complex.index(d)
    for r, x in enumerate(complex.cells(d + 1)):
        for f, c in complex.cell_boundary(x).items():
            out[(r, idx[f])] = out.get((r, idx[f]), 0) + c
    return {k: v for k, v in out.items() if v}


def coboundary_matrix(complex, d: int, p: int | None = None):
    """Dense matrix of ``delta`` on ``C^d``; int64 mod p if ``p`` is given."""
    rows, cols = len(complex.cells(d + 1)), len(complex.cells(d))
    if p is not None:
        M = np.zeros((rows, cols), dtype=np.int64)
        for (r, c), v in coboundary_entries(complex, d).items():
            M[r, c] = v % p
        return M
    M = [[0] * cols for _ in range(rows)]
    for (r, c), v in coboundary_entries(complex, d).items():
        M[r][c] = v
    return M


def coboundary(alpha: Cochain) -> Cochain:
    cx, d, ring = alpha.complex, alpha.degree, alpha.ring
    out = _zeros(ring, len(cx.cells(d + 1)))
    for (r, c), v in coboundary_entries(cx, d).items():
        out[r] = out[r] + v * alpha.values[c]
    return Cochain(cx, d + 1, out, ring)


# evaluating tensor powers of cochains through natural operations ------------------

def _op_cache(complex) -> dict:
    cache = getattr(complex, "_cellcoalg_ops", None)
    if cache is None:
        cache = {}
        complex._cellcoalg_ops = cache
    return cache


def _require_natural(complex):
    if not getattr(complex, "natural", True):
        raise PreconditionError(
            "operations need every identification to be a +1 translation")


def operation_table(complex, r: int, i: int, degrees: tuple):
    """Gather arrays for ``(a_1 (x) ... (x) a_r) o psi(r)(e_i)``.

    Returns ``(factors, coeffs, owners, out_degree)``.  Row t says that the
    output cell ``owners[t]`` receives ``coeffs[t]`` times the product of
    ``a_j`` at cell index ``factors[t, j]``.
    """
    _require_natural(complex)
    key = (r, i, tuple(degrees))
    cache = _op_cache(complex)
    if key in cache:
        return cache[key]
    model = complex.model
    n = sum(degrees) - i
    op = psi(model, r, i)
    idx = [complex.index(q) for q in degrees]
    fac, coe, own = [], [], []
    if i >= 0:
        for o, x in enumerate(complex.cells(n)):
            for lab, c in op.top(n).items():
                if any(model.degree(f) != q for f, q in zip(lab, degrees)):
                    continue
                row = []
                for j, f in enumerate(lab):
                    cell, s = complex.local_cell(x, f)
                    c *= s
                    row.append(idx[j][cell])
                fac.append(row)
                coe.append(c)
                own.append(o)
    table = (np.array(fac, dtype=np.int64).reshape(len(fac), r),
             np.array(coe, dtype=np.int64), np.array(own, dtype=np.int64), n)
    cache[key] = table
    return table


def evaluate_tensor(cochains, i: int) -> Cochain:
    """``(a_1 (x) ... (x) a_r) o psi(r)(e_i)`` as a cochain of degree ``sum q - i``."""
    ring = cochains[0].ring
    cx = cochains[0].complex
    for a in cochains:
        if a.ring != ring:
            raise PreconditionError("cochains over different rings")
        if a.complex is not cx:
            raise PreconditionError("cochains on different complexes")
    degrees = tuple(a.degree for a in cochains)
    n = sum(degrees) - i
    if i < 0 or n < 0 or n > cx.dimension:
        return Cochain.zero(cx, max(n, 0), ring) if 0 <= n <= cx.dimension else _Nothing(cx, n, ring)
    factors, coeffs, owners, _ = operation_table(cx, len(cochains), i, degrees)
    n_out = len(cx.cells(n))
    if ring.kind == "F":
        offsets = np.cumsum([0] + [len(a.values) for a in cochains[:-1]])
        vec = np.concatenate([a.values for a in cochains])
        out = _kernels.eval_products(vec, factors + offsets[None, :], coeffs % ring.p,
                                     owners, n_out, ring.p)
        return Cochain(cx, n, out, ring)
    out = _zeros(ring, n_out)
    for row, c, o in zip(factors.tolist(), coeffs.tolist(), owners.tolist()):
        v = ring.coerce(c)
        for a, j in zip(cochains, row):
            v = v * a.values[j]
        out[o] = out[o] + v
    return Cochain(cx, n, out, ring)


class _Nothing(Cochain):
    """Placeholder for a cochain in a degree where the complex has no cells."""

    def __init__(self, complex, degree, ring):
        self.complex = complex
        self.degree = degree
        self.values = _zeros(ring, 0)
        self.ring = ring


def cup_product(a: Cochain, b: Cochain) -> Cochain:
    """``(a (x) b) o Delta``."""
    if a.ring != b.ring:
        raise PreconditionError("cup product of cochains over different rings")
    return evaluate_tensor([a, b], 0)


# cohomology ---------------------------------------------------------------------

class DegreeData:
    __slots__ = ("degree", "rank", "torsion", "representatives", "_solver")

    def __init__(self, degree, rank, torsion, representatives, solver):
        self.degree = degree
        self.rank = rank
        self.torsion = torsion
        self.representatives = representatives
        self._solver = solver


class Cohomology:
    """Presentation of ``H^*(X; ring)`` by representative cocycles.

    Over a prime field ``rank`` is the dimension.  Over the integers it is
    the free rank and ``torsion`` lists the invariant factors bigger than 1;
    representatives of free generators come first.  Over the rationals the
    representatives are those of the free integral generators.
    """

    def __init__(self, complex, ring: RingTag):
        self.complex = complex
        self.ring = ring
        self.degrees: list[DegreeData] = []
        if ring.kind == "F":
            self._build_field(ring.p)
        else:
            self._build_integral()

    # construction ----------------------------------------------------------------
    def _build_field(self, p: int):
        cx = self.complex
        prev = np.zeros((len(cx.cells(0)), 0), dtype=np.int64)
        for d in range(cx.dimension + 1):
            delta = coboundary_matrix(cx, d, p)          # rows index C^{d+1}
            Z = nullspace_mod_p(delta, p)
            R = column_space_complement(prev, Z, p)
            Q = np.concatenate([prev, R], axis=1)
            h = R.shape[1]

            def solver(v, Q=Q, h=h, p=p):
                x = solve_mod_p(Q, v, p)
                if x is None:
                    raise PreconditionError("not a cocycle")
                return tuple(int(c) for c in x[Q.shape[1] - h:])
            reps = [Cochain(cx, d, R[:, j], self.ring) for j in range(h)]
            self.degrees.append(DegreeData(d, h, (), reps, solver))
            prev = _column_basis(delta, p)

    def _build_integral(self):
        cx = self.complex
        prev = [[] for _ in cx.cells(0)]  # image of delta^{-1}: no columns
        for d in range(cx.dimension + 1):
            n_d = len(cx.cells(d))
            delta = coboundary_matrix(cx, d)
            if delta:
                D, _, _, V, Vinv = smith_normal_form(delta)
                r = sum(1 for x in diagonal(D) if x)
            else:
                V = [[int(i == j) for j in range(n_d)] for i in range(n_d)]
                Vinv, r = V, 0
            K = [row[r:] for row in V]                  # n_d x m kernel basis
            W = Vinv[r:]                                # m x n_d coordinates on ker
            m = n_d - r
            ncols = len(prev[0]) if prev else 0
            if m and ncols:
                M = [[sum(W[a][k] * prev[k][c] for k in range(n_d)) for c in range(ncols)]
                     for a in range(m)]
                D2, U2, U2inv, _, _ = smith_normal_form(M)
                inv = diagonal(D2)
            else:
                U2 = U2inv = [[int(i == j) for j in range(m)] for i in range(m)]
                inv = []
            inv = inv + [0] * (m - len(inv))
            free = [a for a in range(m) if inv[a] == 0]
            tors = [a for a in range(m) if inv[a] > 1]
            order = free + tors
            gens = []
            for a in order:
                col = [sum(K[k][b] * U2inv[b][a] for b in range(m)) for k in range(n_d)]
                gens.append(col)
            moduli = [0] * len(free) + [inv[a] for a in tors]
            ring = self.ring

            def solver(v, W=W, U2=U2, order=order, moduli=moduli, delta=delta, ring=ring,
                       n_free=len(free)):
                if ring.kind == "Q":
                    den = 1
                    for x in v:
                        den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
                    iv = [int(Fraction(x) * den) for x in v]
                else:
                    den, iv = 1, [int(x) for x in v]
                if any(sum(row[k] * iv[k] for k in range(len(iv))) for row in delta):
                    raise PreconditionError("not a cocycle")
                w = [sum(row[k] * iv[k] for k in range(len(iv))) for row in W]
                c = [sum(U2[a][b] * w[b] for b in range(len(w))) for a in range(len(w))]
                out = []
                for a, mod in zip(order, moduli):
                    out.append(c[a] % mod if mod else c[a])
                if ring.kind == "Q":
                    return tuple(Fraction(x, den) for x in out[:n_free])
                return tuple(out)

            if ring.kind == "Q":
                reps = [Cochain(cx, d, g, ring) for g in gens[:len(free)]]
                self.degrees.append(DegreeData(d, len(free), (), reps, solver))
            else:
                reps = [Cochain(cx, d, g, ring) for g in gens]
                self.degrees.append(DegreeData(d, len(free), tuple(moduli[len(free):]),
                                               reps, solver))
            # delta^d has rows indexed by C^{d+1}: its columns span B^{d+1}
            prev = delta

    # queries ---------------------------------------------------------------------
    @property
    def ranks(self) -> list[int]:
        return [dd.rank for dd in self.degrees]

    dims = ranks

    @property
    def torsion(self) -> list[tuple]:
        return [dd.torsion for dd in self.degrees]

    def representatives(self, d: int) -> list[Cochain]:
        return self.degrees[d].representatives if 0 <= d < len(self.degrees) else []

    def size(self, d: int) -> int:
        return len(self.representatives(d))

    def is_cocycle(self, alpha: Cochain) -> bool:
        return coboundary(alpha).is_zero() if alpha.degree < self.complex.dimension else True

    def coordinates(self, alpha: Cochain) -> tuple:
        """Coordinates of the class of a cocycle in the representative basis."""
        if alpha.complex is not self.complex or alpha.ring != self.ring:
            raise PreconditionError("cochain does not belong to this presentation")
        d = alpha.degree
        if not 0 <= d < len(self.degrees):
            return ()
        if self.ring.kind == "F" and not self.is_cocycle(alpha):
            raise PreconditionError("not a cocycle")
        return self.degrees[d]._solver(list(alpha.values) if self.ring.kind != "F" else alpha.values)

    def cochain(self, d: int, coords) -> Cochain:
        """The combination of representatives with the given coordinates."""
        out = Cochain.zero(self.complex, d, self.ring)
        for c, rep in zip(coords, self.representatives(d)):
            out = out + rep.scale(c)
        return out

    def basis_class(self, d: int, j: int) -> Cochain:
        return self.representatives(d)[j]

    def to_json(self) -> dict:
        out = {"ring": self.ring.flag(),
               "representatives": {str(dd.degree): [r.serialize() for r in dd.representatives]
                                   for dd in self.degrees}}
        if self.ring.kind == "F":
            out["dims"] = self.ranks
        else:
            out["ranks"] = self.ranks
            if self.ring.kind == "Z":
                out["torsion"] = [list(t) for t in self.torsion]
        return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _column_basis(M: np.ndarray, p: int) -> np.ndarray:
    if M.size == 0:
        return M
    _, piv = _kernels.rref_mod_p(M, p)
    return M[:, piv]


def cohomology(complex, ring: RingTag) -> Cohomology:
    return Cohomology(complex, ring)


# Steenrod operations ----------------------------------------------------------------

def _target(alpha: Cochain, deg: int) -> Cochain:
    cx = alpha.complex
    if 0 <= deg <= cx.dimension:
        return Cochain.zero(cx, deg, alpha.ring)
    return _Nothing(cx, deg, alpha.ring)


def steenrod_square(k: int, alpha: Cochain) -> Cochain:
    """Cochain-level ``Sq^k(alpha) = (alpha (x) alpha) o psi(2)(e_{q-k})``."""
    if alpha.ring != F2:
        raise PreconditionError("Steenrod squares need coefficients in F2")
    q = alpha.degree
    i = q - k
    if i < 0 or k < 0 or isinstance(alpha, _Nothing) or q + k > alpha.complex.dimension:
        return _target(alpha, q + k)
    return evaluate_tensor([alpha, alpha], i)


def _check_odd(p: int, alpha: Cochain):
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"p = {p} is not an odd prime")
    if alpha.ring.kind != "F" or alpha.ring.p != p:
        raise PreconditionError(f"coefficients must be F{p}")


def p0_scalar(model, p: int, q: int) -> int:
    """The residue ``c(q)`` with raw ``P^0 = c(q) id`` on degree-q classes.

    It is the coefficient of ``x^{(x)p}`` in ``psi(p)(e_{q(p-1)})`` on the top
    cell x of the standard q-dimensional model.
    """
    x = model.top(q)
    return psi(model, p, q * (p - 1)).top(q).get((x,) * p, 0) % p


def power_operation(p: int, s: int, bockstein: int, alpha: Cochain,
                    normalized: bool = False) -> Cochain:
    """``P^s`` (bockstein 0) or ``beta P^s`` (bockstein 1) at the cochain level.

    The raw operation is ``alpha^{(x)p} o psi(p)(e_i)`` with
    ``i = (q - 2s)(p - 1) - bockstein``; negative ``i`` gives zero.  With
    ``normalized`` the result is divided by :func:`p0_scalar` so that
    ``P^0`` is the identity.
    """
    _check_odd(p, alpha)
    if bockstein not in (0, 1):
        raise PreconditionError("bockstein must be 0 or 1")
    q = alpha.degree
    i = (q - 2 * s) * (p - 1) - bockstein
    out_deg = q + 2 * s * (p - 1) + bockstein
    if i < 0 or s < 0 or isinstance(alpha, _Nothing) or out_deg > alpha.complex.dimension:
        return _target(alpha, out_deg)
    out = evaluate_tensor([alpha] * p, i)
    if normalized:
        c = p0_scalar(alpha.complex.model, p, q)
        if c == 0:
            raise PreconditionError(f"raw P^0 vanishes in degree {q}; cannot normalize")
        out = out.scale(pow(c, -1, p))
    return out


def bockstein_cochain(alpha: Cochain) -> Cochain:
    """``[delta(lift)/p]`` for an F_p cocycle, computed through the integers."""
    ring = alpha.ring
    if ring.kind != "F":
        raise PreconditionError("the Bockstein needs prime-field coefficients")
    p = ring.p
    cx, d = alpha.complex, alpha.degree
    vals = [0] * len(cx.cells(d + 1))
    for (r, c), v in coboundary_entries(cx, d).items():
        vals[r] += v * int(alpha.values[c])
    if any(v % p for v in vals):
        raise PreconditionError("not a cocycle mod p")
    if 0 <= d + 1 <= cx.dimension:
        return Cochain(cx, d + 1, [v // p for v in vals], ring)
    return _Nothing(cx, d + 1, ring)


def random_coboundary(complex, degree: int, ring: RingTag, rng: random.Random) -> Cochain:
    """``delta beta`` for a uniformly random ``beta`` of degree ``degree - 1``."""
    if degree == 0 or degree > complex.dimension:
        return Cochain.zero(complex, degree, ring) if degree <= complex.dimension else None
    n = len(complex.cells(degree - 1))
    if ring.kind == "F":
        beta = [rng.randrange(ring.p) for _ in range(n)]
    else:
        beta = [rng.randint(-3, 3) for _ in range(n)]
    return coboundary(Cochain(complex, degree - 1, beta, ring))


# class-level wrappers -------------------------------------------------------------------

def _coords(H: Cohomology, c: Cochain) -> tuple:
    if isinstance(c, _Nothing):
        return ()
    return H.coordinates(c)


def sq(H: Cohomology, k: int, alpha: Cochain) -> tuple:
    """Coordinates of ``Sq^k [alpha]``."""
    if H.ring != F2:
        raise PreconditionError("Steenrod squares need coefficients in F2")
    return _coords(H, steenrod_square(k, alpha))


def p_operation(H: Cohomology, p: int, s: int, bockstein: int, alpha: Cochain,
                normalized: bool = True) -> tuple:
    """Coordinates of ``P^s [alpha]`` or ``beta P^s [alpha]``."""
    return _coords(H, power_operation(p, s, bockstein, alpha, normalized))


def operation_matrix(H: Cohomology, d: int, op) -> list[list[int]]:
    """Matrix of a class operation on ``H^d``; column j is the image of the j-th
    representative, in the representative basis of the target degree."""
    cols = [list(_coords(H, op(rep))) for rep in H.representatives(d)]
    if not cols:
        return []
    return [list(row) for row in zip(*cols)]


def sq_matrix(H: Cohomology, k: int, d: int) -> list[list[int]]:
    return operation_matrix(H, d, lambda a: steenrod_square(k, a))


def p_matrix(H: Cohomology, p: int, s: int, bockstein: int, d: int,
             normalized: bool = True) -> list[list[int]]:
    return operation_matrix(H, d, lambda a: power_operation(p, s, bockstein, a, normalized))


def rank_of(matrix, p: int) -> int:
    from .linalg import rank_mod_p
    if not matrix or not matrix[0]:
        return 0
    return rank_mod_p(np.array(matrix, dtype=np.int64), p)


def integral_bockstein_rank(HZ: Cohomology, d: int, p: int = 2) -> int:
    """Rank of the mod-p Bockstein ``H^d -> H^{d+1}`` predicted by the integral
    torsion: the number of invariant factors of ``H^{d+1}(Z)`` with p-adic
    valuation exactly one."""
    if HZ.ring.kind != "Z":
        raise PreconditionError("needs the integral presentation")
    if d + 1 >= len(HZ.degrees):
        return 0
    return sum(1 for t in HZ.torsion[d + 1] if t % p == 0 and t % (p * p))


# relations ---------------------------------------------------------------------------

class Report:
    """Outcome of a relation check: ``holds`` plus the cases that failed."""

    def __init__(self, name: str, checked: int = 0, failures=None):
        self.name = name
        self.checked = checked
        self.failures = list(failures or [])

    @property
    def holds(self) -> bool:
        return not self.failures

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures += other.failures
        return self

    def to_json(self) -> dict:
        return {"relation": self.name, "holds": self.holds, "checked": self.checked,
                "failures": self.failures}

    def __repr__(self):
        return f"Report({self.name}, holds={self.holds}, checked={self.checked})"


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero whenever ``n < 0``, ``k < 0`` or ``k > n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _operation(H: Cohomology, p: int):
    """Class operation ``(s, alpha) -> cochain``: ``Sq^s`` or normalized ``P^s``."""
    if p == 2:
        return lambda s, a: steenrod_square(s, a)
    return lambda s, a: power_operation(p, s, 0, a, normalized=True)


def _sum(H: Cohomology, deg: int, cochains) -> Cochain | None:
    out = None
    for c in cochains:
        if isinstance(c, _Nothing):
            continue
        out = c if out is None else out + c
    return out


def _class_eq(H: Cohomology, deg: int, lhs, rhs) -> bool:
    if not 0 <= deg <= H.complex.dimension:
        return True
    z = Cochain.zero(H.complex, deg, H.ring)
    lhs = z if lhs is None else lhs
    rhs = z if rhs is None else rhs
    return H.coordinates(lhs) == H.coordinates(rhs)


def _step(p: int) -> int:
    return 1 if p == 2 else 2 * (p - 1)


def verify_cartan(H: Cohomology, s: int, alpha: Cochain, beta: Cochain) -> Report:
    """``P^s(ab) = sum_{i+j=s} P^i(a) P^j(b)`` (``Sq`` when p = 2)."""
    p = H.ring.p if H.ring.kind == "F" else 0
    if not p:
        raise PreconditionError("Cartan relation needs prime-field coefficients")
    op = _operation(H, p)
    deg = alpha.degree + beta.degree + s * _step(p)
    lhs = op(s, cup_product(alpha, beta)) if alpha.degree + beta.degree <= H.complex.dimension else None
    if isinstance(lhs, _Nothing):
        lhs = None
    terms = []
    for i in range(s + 1):
        a, b = op(i, alpha), op(s - i, beta)
        if isinstance(a, _Nothing) or isinstance(b, _Nothing):
            continue
        terms.append(cup_product(a, b))
    rep = Report(f"cartan(p={p}, s={s})", 1)
    if not _class_eq(H, deg, lhs, _sum(H, deg, terms)):
        rep.failures.append({"s": s, "degrees": [alpha.degree, beta.degree]})
    return rep


def adem_terms(p: int, a: int, b: int) -> list[tuple[int, int, int]]:
    """Right-hand side of the Adem relation for ``P^a P^b``, ``a < p b``.

    Returns ``(coefficient mod p, first, second)`` for the terms
    ``P^{first} P^{second}``.
    """
    if p == 2:
        if not a < 2 * b:
            raise PreconditionError("the Adem relation for Sq^a Sq^b needs a < 2b")
        out = [(binomial(b - c - 1, a - 2 * c) % 2, a + b - c, c) for c in range(a // 2 + 1)]
    else:
        if not a < p * b:
            raise PreconditionError(f"the Adem relation for P^a P^b needs a < {p}b")
        out = [(((-1) ** (a + i) * binomial((p - 1) * (b - i) - 1, a - p * i)) % p,
                a + b - i, i) for i in range(a // p + 1)]
    return [t for t in out if t[0]]


def verify_adem(H: Cohomology, a: int, b: int, alpha: Cochain) -> Report:
    """Compare ``P^a P^b (alpha)`` with the Adem expansion in cohomology."""
    p = H.ring.p if H.ring.kind == "F" else 0
    if not p:
        raise PreconditionError("Adem relations need prime-field coefficients")
    terms = adem_terms(p, a, b)
    op = _operation(H, p)
    deg = alpha.degree + (a + b) * _step(p)

    def twice(x, y):
        inner = op(y, alpha)
        if isinstance(inner, _Nothing):
            return None
        out = op(x, inner)
        return None if isinstance(out, _Nothing) else out
    lhs = twice(a, b)
    rhs = _sum(H, deg, [t.scale(c) for c, x, y in terms if (t := twice(x, y)) is not None])
    rep = Report(f"adem(p={p}, a={a}, b={b})", 1)
    if not _class_eq(H, deg, lhs, rhs):
        rep.failures.append({"a": a, "b": b, "degree": alpha.degree})
    return rep


def cartan_report(H: Cohomology, max_total: int = 4) -> Report:
    """Cartan relation on all pairs of basis classes and all s with total degree
    ``|a| + |b| + s*step`` at most ``max_total`` (and at most the dimension)."""
    p = H.ring.p
    rep = Report(f"cartan(p={p})")
    top = min(max_total, H.complex.dimension)
    for da in range(top + 1):
        for db in range(top + 1 - da):
            for s in range(0, top + 1):
                if da + db + s * _step(p) > top:
                    break
                for x in H.representatives(da):
                    for y in H.representatives(db):
                        rep.merge(verify_cartan(H, s, x, y))
    return rep


def adem_report(H: Cohomology, max_total: int = 4) -> Report:
    """Adem relations for all ``a < p b`` (a, b >= 1, a + b <= max_total) on all basis classes."""
    p = H.ring.p
    rep = Report(f"adem(p={p})")
    for b in range(1, max_total + 1):
        for a in range(1, max_total + 1 - b):
            if not a < p * b:
                continue
            for d in range(H.complex.dimension + 1):
                for x in H.representatives(d):
                    rep.merge(verify_adem(H, a, b, x))
    return rep
