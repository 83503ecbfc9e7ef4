"""Ordered simplicial complexes and the Alexander-Whitney coalgebra.

A simplex is a strictly increasing tuple of integer vertices.  Chains are
:class:`~cellcoalg.free.Element` objects whose labels are 1-tuples of
simplices; tensor powers use longer tuples.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .free import Element, GradedMap, add_into, tensor, identity, tensor_boundary
from .scalars import ZZ, RingTag


def simplex_degree(s: tuple) -> int:
    return len(s) - 1


deg = simplex_degree


def simplex(*vertices: int, ring: RingTag = ZZ) -> Element:
    """Basis chain ``[v_0, ..., v_n]``."""
    return Element.basis((check_simplex(tuple(vertices)),), ring)


def check_simplex(s: tuple) -> tuple:
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    if any(b <= a for a, b in zip(s, s[1:])):
        raise ValueError(f"vertices of {list(s)} are not strictly increasing")
    return s


# raw basis formulas -------------------------------------------------------

@lru_cache(maxsize=None)
def face_boundary(s: tuple) -> dict:
    if len(s) == 1:
        return {}
    return {s[:i] + s[i + 1:]: (-1) ** i for i in range(len(s))}


@lru_cache(maxsize=None)
def aw_raw(s: tuple) -> dict:
    return {(s[:i + 1], s[i:]): 1 for i in range(len(s))}


def counit_raw(s: tuple) -> int:
    return 1 if len(s) == 1 else 0


def join_raw(a: tuple, b: tuple) -> dict:
    """``*(a (x) b)``: signed ordered union, zero if a vertex repeats."""
    vs = a + b
    if len(set(vs)) != len(vs):
        return {}
    # sign of the sorting permutation by inversion count
    inv = 0
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if vs[i] > vs[j]:
                inv += 1
    sign = (-1) ** ((len(a) - 1) + inv)
    return {tuple(sorted(vs)): sign}


# graded maps --------------------------------------------------------------

BOUNDARY = tensor_boundary(face_boundary, deg)
ID = identity(deg)
AW = GradedMap(lambda lab: {k: v for k, v in aw_raw(lab[0]).items()}, 0, deg, 1, "Delta")
EPS = GradedMap(lambda lab: {(): 1} if len(lab[0]) == 1 else {}, 0, deg, 1, "eps")
JOIN = GradedMap(lambda lab: {(k,): v for k, v in join_raw(lab[0], lab[1]).items()},
                 1, deg, 2, "*")


def boundary(c: Element) -> Element:
    """Alternating face sum, applied factorwise with Koszul signs on tensors."""
    return BOUNDARY(c)


def aw_coproduct(c: Element) -> Element:
    return AW(c)


def augmentation(c: Element):
    """Sum of the coefficients on vertices, as a raw ring value."""
    return EPS(c).coefficient(())


def join(x: Element) -> Element:
    return JOIN(x)


def iterated_coproduct_map(k: int) -> GradedMap:
    """``Delta^k = (Delta (x) id) o Delta^{k-1}`` with ``Delta^1 = Delta``."""
    if k < 1:
        raise ValueError("k must be positive")
    m = AW
    for j in range(2, k + 1):
        m = tensor(AW, *([ID] * (j - 1))) @ m
    return m


def iterated_coproduct(k: int, c: Element) -> Element:
    return iterated_coproduct_map(k)(c)


def standard_simplex_cells(n: int) -> list[tuple]:
    return [f for d in range(n + 1) for f in combinations(range(n + 1), d + 1)]


class SimplicialComplex:
    """A finite simplicial complex given by facets on integer vertices.

    Facets must be strictly increasing vertex lists; the vertex order is the
    global order used by every coproduct formula.
    """

    def __init__(self, facets):
        seen = set()
        clean = []
        for f in facets:
            f = tuple(int(v) for v in f)
            check_simplex(f)
            if f in seen:
                raise ValueError(f"duplicate facet {list(f)}")
            seen.add(f)
            clean.append(f)
        if not clean:
            raise ValueError("empty complex")
        self.facets = clean
        faces: set = set()
        for f in clean:
            for d in range(len(f)):
                faces.update(combinations(f, d + 1))
        self.dimension = max(len(f) for f in clean) - 1
        self._cells = [sorted(s for s in faces if len(s) == d + 1)
                       for d in range(self.dimension + 1)]
        self._index = [{s: i for i, s in enumerate(cs)} for cs in self._cells]
        self.vertices = [s[0] for s in self._cells[0]]

    def cells(self, d: int) -> list[tuple]:
        if 0 <= d <= self.dimension:
            return self._cells[d]
        return []

    def index(self, d: int) -> dict:
        return self._index[d] if 0 <= d <= self.dimension else {}

    def cell_boundary(self, s: tuple) -> dict:
        return face_boundary(s)

    def f_vector(self) -> list[int]:
        return [len(c) for c in self._cells]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    @property
    def model(self):
        return SIMPLEX_MODEL

    def local_cell(self, cell: tuple, std: tuple) -> tuple:
        """Image of a standard-simplex cell under the characteristic map of ``cell``."""
        return tuple(cell[i] for i in std), 1

    def cell_to_json(self, cell: tuple):
        return list(cell)

    def __repr__(self):
        return f"SimplicialComplex(f_vector={self.f_vector()})"


class SimplicialModel:
    """The standard simplices as a local model for natural operations."""

    name = "simplex"

    def degree(self, cell: tuple) -> int:
        return len(cell) - 1

    def top(self, n: int) -> tuple:
        return tuple(range(n + 1))

    def cells(self, n: int) -> list[tuple]:
        return standard_simplex_cells(n)

    def dimension(self, cell: tuple) -> int:
        return len(cell) - 1

    def boundary(self, cell: tuple) -> dict:
        return face_boundary(cell)

    def coproduct(self, cell: tuple) -> dict:
        return aw_raw(cell)

    def counit(self, cell: tuple) -> int:
        return 1 if len(cell) == 1 else 0

    def join(self, a: tuple, b: tuple) -> dict:
        return join_raw(a, b)

    def embedding(self, cell: tuple):
        """Relabeling of standard ``len(cell)-1``-simplex cells onto ``cell``."""
        return lambda c: tuple(cell[i] for i in c)

    def to_json(self, cell: tuple):
        return list(cell)


SIMPLEX_MODEL = SimplicialModel()


def boundary_matrix_entries(cx: SimplicialComplex, d: int) -> dict:
    """``{(row, col): coeff}`` of the boundary C_d -> C_{d-1} in cell indices."""
    out = {}
    idx = cx.index(d - 1)
    for j, s in enumerate(cx.cells(d)):
        for f, c in face_boundary(s).items():
            out[(idx[f], j)] = c
    return out


__all__ = [
    "simplex", "boundary", "aw_coproduct", "augmentation", "join",
    "iterated_coproduct", "iterated_coproduct_map", "SimplicialComplex",
    "SimplicialModel", "SIMPLEX_MODEL", "AW", "EPS", "JOIN", "ID", "BOUNDARY",
    "add_into",
]
