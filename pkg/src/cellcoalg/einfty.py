"""Natural operations on chains of standard cells and cup-(r,i) coproducts.

A :class:`NaturalOperation` of arity r and degree d assigns to every cell x
of a local model (standard simplices or cubes) an element of the r-fold
tensor power of chains on x, of degree ``|x| + d``.  By naturality it is
determined by its values on the top cells of the standard models, which
are computed on demand and memoized per dimension; values on faces are
obtained through the face inclusions.

All arithmetic here is over the integers.

Sign conventions are those of :mod:`cellcoalg.free`.  With them the three
contraction operators satisfy ``proj o incl = id`` and
``d sigma + sigma d = id - incl o proj``, so that
``h = sum_{k<r} incl^k sigma proj^k`` solves ``d h + h d = id - incl^r proj^r``
and the recursion ``psi(e_{i+1}) = h T psi(e_i)`` (resp. ``h N``) gives
``d psi(e_{2m+1}) = T psi(e_{2m})`` and ``d psi(e_{2m}) = N psi(e_{2m-1})``.
"""

from __future__ import annotations

from functools import lru_cache

from . import cubical, simplicial
from .free import (Element, GradedMap, add_into, cycle, identity, permutation_map,
                   permute_label, tensor)
from .scalars import ZZ


def _koszul(e: int) -> int:
    return -1 if e % 2 else 1


class NaturalOperation:
    """Memoized natural operation on a local model.

    ``compute_top(n)`` returns the value on the top cell of the standard
    n-dimensional model as a dict from r-tuples of cells to ints.
    """

    def __init__(self, model, arity: int, degree: int, compute_top, name: str = ""):
        self.model = model
        self.arity = arity
        self.degree = degree
        self._compute_top = compute_top
        self.name = name
        self._top: dict = {}
        self._cells: dict = {}

    def _possible(self, n: int) -> bool:
        out = n + self.degree
        if self.arity == 0:
            return out == 0
        return 0 <= out <= self.arity * n

    def top(self, n: int) -> dict:
        # concurrent inserts of the same key store equal values, so the
        # unguarded dict is safe under the GIL
        val = self._top.get(n)
        if val is None:
            val = self._compute_top(n) if self._possible(n) else {}
            self._top[n] = val
        return val

    def on_cell(self, cell) -> dict:
        val = self._cells.get(cell)
        if val is None:
            n = self.model.dimension(cell)
            t = self.top(n)
            if cell == self.model.top(n):
                val = t
            else:
                emb = self.model.embedding(cell)
                val = {tuple(emb(f) for f in lab): c for lab, c in t.items()}
            self._cells[cell] = val
        return val

    def __call__(self, x: Element) -> Element:
        acc: dict = {}
        for (cell,), c in x.items():
            add_into(acc, self.on_cell(cell), c)
        return Element(acc, x.ring)

    def as_graded_map(self) -> GradedMap:
        return GradedMap(lambda lab: self.on_cell(lab[0]), self.degree,
                         self.model.degree, 1, self.name)

    def __repr__(self):
        return f"NaturalOperation({self.name}, arity={self.arity}, degree={self.degree})"


# generators ---------------------------------------------------------------

def zero_op(model, arity: int, degree: int) -> NaturalOperation:
    return NaturalOperation(model, arity, degree, lambda n: {}, "0")


def identity_op(model) -> NaturalOperation:
    return NaturalOperation(model, 1, 0, lambda n: {(model.top(n),): 1}, "id")


def counit_op(model) -> NaturalOperation:
    return NaturalOperation(model, 0, 0, lambda n: {(): 1} if n == 0 else {}, "eps")


def coproduct_op(model) -> NaturalOperation:
    return iterated_coproduct_op(model, 1)


def iterated_coproduct_op(model, k: int) -> NaturalOperation:
    """``Delta^k = (Delta (x) id^{k-1}) o Delta^{k-1}``, arity k+1."""
    if k < 1:
        raise ValueError("k must be positive")

    def compute(n):
        acc = {(model.top(n),): 1}
        for _ in range(k):
            nxt: dict = {}
            for lab, c in acc.items():
                for (a, b), d in model.coproduct(lab[0]).items():
                    add_into(nxt, {(a, b) + lab[1:]: c * d})
            acc = nxt
        return acc
    return NaturalOperation(model, k + 1, 0, compute, f"Delta^{k}")


# the contraction operators ---------------------------------------------------

def incl(eta: NaturalOperation) -> NaturalOperation:
    """``(id (x) eta) o Delta``: arity r -> r+1."""
    model = eta.model

    def compute(n):
        acc: dict = {}
        for (a, b), c in model.coproduct(model.top(n)).items():
            vals = eta.on_cell(b)
            if not vals:
                continue
            s = c * _koszul(eta.degree * model.degree(a))
            for lab, d in vals.items():
                add_into(acc, {(a,) + lab: s * d})
        return acc
    return NaturalOperation(model, eta.arity + 1, eta.degree, compute, f"incl({eta.name})")


def proj(eta: NaturalOperation) -> NaturalOperation:
    """``(eps (x) id^{r-1}) o eta``: arity r -> r-1."""
    if eta.arity < 1:
        raise ValueError("proj needs arity at least 1")
    model = eta.model

    def compute(n):
        acc: dict = {}
        for lab, c in eta.top(n).items():
            if model.counit(lab[0]):
                add_into(acc, {lab[1:]: c})
        return acc
    return NaturalOperation(model, eta.arity - 1, eta.degree, compute, f"proj({eta.name})")


def sigma(eta: NaturalOperation) -> NaturalOperation:
    """``(* (x) id^{r-1}) o (id (x) eta) o Delta``: arity r, degree +1."""
    if eta.arity < 1:
        raise ValueError("sigma needs arity at least 1")
    model = eta.model

    def compute(n):
        acc: dict = {}
        for (a, b), c in model.coproduct(model.top(n)).items():
            vals = eta.on_cell(b)
            if not vals:
                continue
            s = c * _koszul(eta.degree * model.degree(a))
            for lab, d in vals.items():
                for w, e in model.join(a, lab[0]).items():
                    add_into(acc, {(w,) + lab[1:]: s * d * e})
        return acc
    return NaturalOperation(model, eta.arity, eta.degree + 1, compute, f"sigma({eta.name})")


def act(g: tuple, eta: NaturalOperation) -> NaturalOperation:
    """Permute output factors: factor j of the result is factor ``g[j]`` of eta."""
    model = eta.model
    g = tuple(g)
    if len(g) != eta.arity:
        raise ValueError("permutation size must equal the arity")
    if g == tuple(range(eta.arity)):
        return eta

    def compute(n):
        acc: dict = {}
        for lab, c in eta.top(n).items():
            new, s = permute_label(g, lab, model.degree)
            add_into(acc, {new: s * c})
        return acc
    return NaturalOperation(model, eta.arity, eta.degree, compute, f"{g}.{eta.name}")


def combination(terms, name: str = "") -> NaturalOperation:
    """Integer linear combination ``sum c_j eta_j`` of operations of equal type."""
    terms = [(c, e) for c, e in terms if c]
    if not terms:
        raise ValueError("empty combination; use zero_op")
    model, arity, degree = terms[0][1].model, terms[0][1].arity, terms[0][1].degree
    for _, e in terms:
        if (e.arity, e.degree) != (arity, degree):
            raise ValueError("combined operations must share arity and degree")

    def compute(n):
        acc: dict = {}
        for c, e in terms:
            add_into(acc, e.top(n), c)
        return acc
    return NaturalOperation(model, arity, degree, compute, name or "sum")


def power(g: tuple, k: int) -> tuple:
    out = tuple(range(len(g)))
    for _ in range(k):
        out = tuple(out[i] for i in g)
    return out


def T(eta: NaturalOperation) -> NaturalOperation:
    """``(rho - 1) eta`` with rho the cyclic shift of output factors."""
    return combination([(1, act(cycle(eta.arity), eta)), (-1, eta)], f"T{eta.name}")


def N(eta: NaturalOperation) -> NaturalOperation:
    """``(1 + rho + ... + rho^{r-1}) eta``."""
    rho = cycle(eta.arity)
    return combination([(1, act(power(rho, j), eta)) for j in range(eta.arity)],
                       f"N{eta.name}")


def contraction_h(eta: NaturalOperation, top_index: int | None = None) -> NaturalOperation:
    """``h(eta) = sum_{k=0}^{r-1} incl^k sigma proj^k (eta)``.

    ``top_index`` overrides the last k (the displayed formula runs to k = r,
    where sigma would act in arity 0 and is undefined).
    """
    r = eta.arity
    last = r - 1 if top_index is None else top_index
    if r < 1:
        raise ValueError("h needs arity at least 1")
    if last > r - 1:
        raise ValueError("sigma is undefined in arity 0")
    terms = []
    p = eta
    for k in range(last + 1):
        t = sigma(p)
        for _ in range(k):
            t = incl(t)
        terms.append((1, t))
        if k < last:
            p = proj(p)
    return combination(terms, f"h({eta.name})")


_PSI: dict = {}


def psi(model, r: int, i: int) -> NaturalOperation:
    """The cup-(r,i) coproduct ``psi(r)(e_i)``; zero for ``i < 0``."""
    if r < 2:
        raise ValueError("arity r must be at least 2")
    if i < 0:
        return zero_op(model, r, i)
    key = (model.name, r, i)
    op = _PSI.get(key)
    if op is None:
        if i == 0:
            op = iterated_coproduct_op(model, r - 1)
        elif i % 2:
            op = contraction_h(T(psi(model, r, i - 1)))
        else:
            op = contraction_h(N(psi(model, r, i - 1)))
        op.name = f"psi({r})(e_{i})"
        _PSI[key] = op
    return op


def clear_caches():
    _PSI.clear()
    _classic_raw.cache_clear()


# identities -------------------------------------------------------------------

def boundary_op(eta: NaturalOperation) -> NaturalOperation:
    """Hom differential ``d o eta - (-1)^{|eta|} eta o d``."""
    model = eta.model
    s = _koszul(eta.degree)

    def compute(n):
        acc: dict = {}
        for lab, c in eta.top(n).items():
            seen = 0
            for j, f in enumerate(lab):
                for g, d in model.boundary(f).items():
                    add_into(acc, {lab[:j] + (g,) + lab[j + 1:]: _koszul(seen) * c * d})
                seen += model.degree(f)
        for f, c in model.boundary(model.top(n)).items():
            add_into(acc, eta.on_cell(f), -s * c)
        return acc
    return NaturalOperation(model, eta.arity, eta.degree - 1, compute, f"d[{eta.name}]")


def difference_on(a: NaturalOperation, b: NaturalOperation, cells) -> list:
    """Cells where two operations disagree."""
    bad = []
    for x in cells:
        if add_into(add_into({}, a.on_cell(x)), b.on_cell(x), -1):
            bad.append(x)
    return bad


def psi_identity_failures(model, r: int, i_max: int, n_max: int) -> list:
    """Check ``d psi(e_i) = T psi(e_{i-1})`` (i odd) / ``N psi(e_{i-1})`` (i even).

    Returns ``(i, cell)`` pairs where the identity fails, also covering
    ``d psi(e_0) = 0``.
    """
    bad = []
    for i in range(i_max + 1):
        lhs = boundary_op(psi(model, r, i))
        if i == 0:
            rhs = zero_op(model, r, -1)
        elif i % 2:
            rhs = T(psi(model, r, i - 1))
        else:
            rhs = N(psi(model, r, i - 1))
        for n in range(n_max + 1):
            bad += [(i, x) for x in difference_on(lhs, rhs, [model.top(n)])]
    return bad


# Steenrod's recursion through graded maps ------------------------------------

def model_maps(model):
    """``(id, Delta, eps, *, d)`` of a model as :class:`GradedMap` objects."""
    if model.name == "simplex":
        m = simplicial
        return m.ID, m.AW, m.EPS, m.JOIN, m.BOUNDARY
    m = cubical
    return identity(m.deg), m.SERRE, m.EPS, m.JOIN, m.BOUNDARY


@lru_cache(maxsize=None)
def _classic_raw(model_name: str, i: int, cell: tuple) -> tuple:
    model = simplicial.SIMPLEX_MODEL if model_name == "simplex" else cubical.CUBE_MODEL
    return tuple(sorted(classic_map(model, i).raw((cell,)).items()))


@lru_cache(maxsize=None)
def classic_map(model, i: int) -> GradedMap:
    """``Delta_0 = Delta``, ``Delta_i = (* (x) id) o (id (x) (12) Delta_{i-1}) o Delta``."""
    ID, DELTA, _, JOIN, _ = model_maps(model)
    if i < 0:
        return GradedMap(lambda lab: {}, i, model.degree, 1, f"Delta_{i}")
    if i == 0:
        return DELTA
    prev = GradedMap(lambda lab: dict(_classic_raw(model.name, i - 1, lab[0])),
                     i - 1, model.degree, 1, f"Delta_{i - 1}")
    swap = permutation_map((1, 0), model.degree)
    m = tensor(JOIN, ID) @ tensor(ID, swap @ prev) @ DELTA
    m.name = f"Delta_{i}"
    return m


def cup_i_classic(i: int, c: Element, model=simplicial.SIMPLEX_MODEL) -> Element:
    """Steenrod's cup-i coproduct computed by the two-arity recursion."""
    if i < 0:
        return Element({}, c.ring)
    m = GradedMap(lambda lab: dict(_classic_raw(model.name, i, lab[0])), i,
                  model.degree, 1, f"Delta_{i}")
    return m(c)


def evaluate(op: NaturalOperation, x: Element) -> Element:
    return op(x)


def psi_value(model, r: int, i: int, cell) -> Element:
    return Element(psi(model, r, i).on_cell(cell), ZZ)
