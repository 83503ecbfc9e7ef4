"""Cubical chains: the interval coalgebra, the Serre coalgebra and the
cubical join, plus finite cubical complexes built from boxes in Z^d.

A cell of the standard cube is a word of interval cells encoded as ints:
``0`` and ``1`` for the vertices, ``2`` for ``[01]``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .free import Element, GradedMap, add_into, permute_label, tensor_boundary
from .scalars import ZZ, RingTag

V0, V1, E = 0, 1, 2
_NAMES = {0: "0", 1: "1", 2: "01"}
_CODES = {"0": 0, "1": 1, "01": 2}


def cube_degree(word: tuple) -> int:
    return sum(1 for x in word if x == E)


deg = cube_degree


def cube(*letters, ring: RingTag = ZZ) -> Element:
    """Basis chain; letters may be ``0``, ``1``, ``2`` or ``"0"``, ``"1"``, ``"01"``."""
    return Element.basis((parse_word(letters),), ring)


def parse_word(letters) -> tuple:
    out = []
    for x in letters:
        x = _CODES[x] if isinstance(x, str) else int(x)
        if x not in (0, 1, 2):
            raise ValueError(f"bad interval cell {x!r}")
        out.append(x)
    return tuple(out)


def word_to_json(word: tuple) -> list[str]:
    return [_NAMES[x] for x in word]


# the interval -------------------------------------------------------------

INTERVAL_COPRODUCT = {
    V0: {((V0,), (V0,)): 1},
    V1: {((V1,), (V1,)): 1},
    E: {((V0,), (E,)): 1, ((E,), (V1,)): 1},
}
INTERVAL_COUNIT = {V0: 1, V1: 1, E: 0}
INTERVAL_JOIN = {(V0, V1): {(E,): 1}, (V1, V0): {(E,): -1}}


def interval_structure():
    """Coproduct, counit and join tables on the cells ``[0], [1], [01]``."""
    return INTERVAL_COPRODUCT, INTERVAL_COUNIT, INTERVAL_JOIN


# raw basis formulas on words ----------------------------------------------

@lru_cache(maxsize=None)
def cube_boundary_raw(word: tuple) -> dict:
    out = {}
    seen = 0
    for i, x in enumerate(word):
        if x == E:
            s = -1 if seen % 2 else 1
            out[word[:i] + (V1,) + word[i + 1:]] = s
            out[word[:i] + (V0,) + word[i + 1:]] = -s
            seen += 1
    return out


def counit_raw(word: tuple) -> int:
    return 0 if E in word else 1


@lru_cache(maxsize=None)
def serre_raw(word: tuple) -> dict:
    """``Delta(u (x) x) = (23)(Delta u (x) Delta x)`` splitting off the last letter."""
    if not word:
        return {((), ()): 1}
    head, last = word[:-1], word[-1]
    acc: dict = {}
    for (u1, u2), c in serre_raw(head).items():
        for (x1, x2), d in INTERVAL_COPRODUCT[last].items():
            lab, s = permute_label((0, 2, 1, 3), (u1, u2, x1, x2), cube_degree)
            a, b, cc, dd = lab
            add_into(acc, {(a + b, cc + dd): s * c * d})
    return acc


@lru_cache(maxsize=None)
def cube_join_raw(a: tuple, b: tuple) -> dict:
    """Join on a common cube, extended from the interval by splitting off the
    last coordinate:

    ``*((a1 a2) (x) (b1 b2)) = (id (x) eps (x) * + * (x) eps (x) id)(23)(a1 a2 b1 b2)``

    Expanded, the first summand carries ``(-1)^{|a1|}`` from moving ``*``
    past ``a1`` in addition to the ``(-1)^{|a2||b1|}`` of the shuffle.
    """
    if len(a) != len(b):
        raise ValueError("join factors must live on the same cube")
    if not a:
        return {}
    a1, a2 = a[:-1], a[-1]
    b1, b2 = b[:-1], b[-1]
    s = -1 if (a2 == E and cube_degree(b1) % 2) else 1
    out: dict = {}
    if counit_raw(b1):
        t = -s if cube_degree(a1) % 2 else s
        for w, c in INTERVAL_JOIN.get((a2, b2), {}).items():
            add_into(out, {a1 + w: t * c})
    if INTERVAL_COUNIT[a2]:
        for w, c in cube_join_raw(a1, b1).items():
            add_into(out, {w + (b2,): s * c})
    return out


def cube_join_raw_head_split(a: tuple, b: tuple) -> dict:
    """The same join, recursing on the first coordinate instead of the last."""
    if not a:
        return {}
    a1, a2 = a[0], a[1:]
    b1, b2 = b[0], b[1:]
    s = -1 if (cube_degree(a2) % 2 and b1 == E) else 1
    out: dict = {}
    if INTERVAL_COUNIT[b1]:
        t = -s if a1 == E else s
        for w, c in cube_join_raw_head_split(a2, b2).items():
            add_into(out, {(a1,) + w: t * c})
    if counit_raw(a2):
        for w, c in INTERVAL_JOIN.get((a1, b1), {}).items():
            add_into(out, {w + b2: s * c})
    return out


# graded maps --------------------------------------------------------------

BOUNDARY = tensor_boundary(cube_boundary_raw, deg)
SERRE = GradedMap(lambda lab: dict(serre_raw(lab[0])), 0, deg, 1, "Delta")
EPS = GradedMap(lambda lab: {(): 1} if counit_raw(lab[0]) else {}, 0, deg, 1, "eps")
JOIN = GradedMap(lambda lab: {(k,): v for k, v in cube_join_raw(lab[0], lab[1]).items()},
                 1, deg, 2, "*")


def serre_coproduct(c: Element) -> Element:
    return SERRE(c)


def cubical_join(x: Element) -> Element:
    return JOIN(x)


def cube_boundary(c: Element) -> Element:
    return BOUNDARY(c)


def standard_cube_cells(n: int) -> list[tuple]:
    return sorted(product((0, 1, 2), repeat=n), key=lambda w: (cube_degree(w), w))


class CubicalModel:
    """The standard cubes as a local model for natural operations."""

    name = "cube"

    def degree(self, cell: tuple) -> int:
        return cube_degree(cell)

    def top(self, n: int) -> tuple:
        return (E,) * n

    def cells(self, n: int) -> list[tuple]:
        return standard_cube_cells(n)

    def dimension(self, cell: tuple) -> int:
        return cube_degree(cell)

    def boundary(self, cell: tuple) -> dict:
        return cube_boundary_raw(cell)

    def coproduct(self, cell: tuple) -> dict:
        return serre_raw(cell)

    def counit(self, cell: tuple) -> int:
        return counit_raw(cell)

    def join(self, a: tuple, b: tuple) -> dict:
        return cube_join_raw(a, b)

    def embedding(self, cell: tuple):
        """Face inclusion of the standard k-cube onto ``cell`` (k = its degree)."""
        slots = [i for i, x in enumerate(cell) if x == E]

        def emb(w):
            out = list(cell)
            for i, x in zip(slots, w):
                out[i] = x
            return tuple(out)
        return emb

    def to_json(self, cell: tuple):
        return word_to_json(cell)


CUBE_MODEL = CubicalModel()


# finite cubical complexes -------------------------------------------------

def _box(intervals) -> tuple:
    box = tuple((int(lo), int(hi)) for lo, hi in intervals)
    for lo, hi in box:
        if hi - lo not in (0, 1):
            raise ValueError(f"box side [{lo},{hi}] must have length 0 or 1")
    return box


def box_degree(box: tuple) -> int:
    return sum(hi - lo for lo, hi in box)


def box_faces(box: tuple):
    choices = [((lo, lo), (hi, hi), (lo, hi)) if hi > lo else ((lo, hi),) for lo, hi in box]
    return set(product(*choices))


def box_boundary_raw(box: tuple) -> dict:
    out = {}
    seen = 0
    for i, (lo, hi) in enumerate(box):
        if hi > lo:
            s = -1 if seen % 2 else 1
            out[box[:i] + ((hi, hi),) + box[i + 1:]] = s
            out[box[:i] + ((lo, lo),) + box[i + 1:]] = -s
            seen += 1
    return out


def box_cell(box: tuple, word: tuple) -> tuple:
    """The face of ``box`` selected by a word on its nondegenerate axes."""
    out = list(box)
    it = iter(word)
    for i, (lo, hi) in enumerate(box):
        if hi > lo:
            x = next(it)
            out[i] = (lo, lo) if x == V0 else (hi, hi) if x == V1 else (lo, hi)
    return tuple(out)


class CubicalComplex:
    """Boxes in Z^d, optionally with cells identified up to sign.

    ``identify`` entries ``(A, B, sign)`` declare ``A = sign * B``.  Entries
    with sign +1 between translated boxes are propagated to all faces.
    """

    def __init__(self, boxes, identify=()):
        boxes = [_box(b) for b in boxes]
        if not boxes:
            raise ValueError("empty complex")
        dims = {len(b) for b in boxes}
        if len(dims) != 1:
            raise ValueError("all boxes must live in the same Z^d")
        raw = set()
        for b in boxes:
            raw |= box_faces(b)
        self.ambient_dim = dims.pop()
        self._parent: dict = {c: (c, 1) for c in raw}
        pairs = []
        self.natural = True
        for entry in identify:
            a, b, s = entry
            a, b, s = _box(a), _box(b), int(s)
            if s not in (1, -1):
                raise ValueError("identification sign must be +1 or -1")
            for c in (a, b):
                if c not in self._parent:
                    raise ValueError(f"identified cell {c} is not in the complex")
            if box_degree(a) != box_degree(b):
                raise ValueError("identified cells must have equal dimension")
            pairs.append((a, b, s))
            moved = _translated_faces(a, b) if s == 1 else None
            if moved is None:
                self.natural = False
            else:
                pairs.extend(moved)
        for a, b, s in pairs:
            self._union(a, b, s)
        reps: set = {self.canonical(c)[0] for c in raw}
        self.dimension = max(box_degree(c) for c in reps)
        self._cells = [sorted(c for c in reps if box_degree(c) == d)
                       for d in range(self.dimension + 1)]
        self._index = [{c: i for i, c in enumerate(cs)} for cs in self._cells]
        self._check_consistent(raw)

    def _find(self, c):
        p, s = self._parent[c]
        if p == c:
            return c, 1
        r, t = self._find(p)
        self._parent[c] = (r, s * t)
        return r, s * t

    def _union(self, a, b, s):
        ra, sa = self._find(a)
        rb, sb = self._find(b)
        if ra == rb:
            if sa != s * sb:
                raise ValueError(f"inconsistent identification of {a} with {b}")
            return
        # a = sa*ra, b = sb*rb, a = s*b  =>  ra = sa*s*sb*rb ; keep the smaller root
        t = sa * s * sb
        if ra < rb:
            self._parent[rb] = (ra, t)
        else:
            self._parent[ra] = (rb, t)

    def canonical(self, cell: tuple) -> tuple:
        return self._find(cell)

    def _check_consistent(self, raw):
        for c in raw:
            r, s = self.canonical(c)
            mine = self.cell_boundary(c)
            theirs = {k: s * v for k, v in self.cell_boundary(r).items()}
            if mine != theirs:
                raise ValueError(f"identification of {c} is incompatible with boundaries")

    def cells(self, d: int) -> list[tuple]:
        return self._cells[d] if 0 <= d <= self.dimension else []

    def index(self, d: int) -> dict:
        return self._index[d] if 0 <= d <= self.dimension else {}

    def cell_boundary(self, box: tuple) -> dict:
        out: dict = {}
        for f, c in box_boundary_raw(box).items():
            r, s = self.canonical(f)
            add_into(out, {r: s * c})
        return out

    def f_vector(self) -> list[int]:
        return [len(c) for c in self._cells]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    @property
    def model(self):
        return CUBE_MODEL

    def local_cell(self, box: tuple, word: tuple) -> tuple:
        """``(cell, sign)`` for the face of ``box`` picked out by a standard-cube word."""
        return self.canonical(box_cell(box, word))

    def cell_to_json(self, box: tuple):
        return [list(iv) for iv in box]

    def __repr__(self):
        return f"CubicalComplex(f_vector={self.f_vector()})"


def _translated_faces(a: tuple, b: tuple):
    shift = [bl - al for (al, _), (bl, _) in zip(a, b)]
    if any((ah - al) != (bh - bl) for (al, ah), (bl, bh) in zip(a, b)):
        return None
    out = []
    for f in box_faces(a):
        if f == a:
            continue
        g = tuple((lo + t, hi + t) for (lo, hi), t in zip(f, shift))
        out.append((f, g, 1))
    return out


def periodic_grid(shape) -> dict:
    """JSON description of the periodic cubical torus with the given side counts.

    Each codimension-one face on the far wall of an axis is identified with
    its translate on the near wall; faces of those follow by propagation.
    """
    shape = [int(m) for m in shape]
    d = len(shape)
    boxes = [[[x, x + 1] for x in corner] for corner in product(*(range(m) for m in shape))]
    identify = []
    for axis, m in enumerate(shape):
        others = [range(k) if i != axis else [0] for i, k in enumerate(shape)]
        for corner in product(*others):
            near = [[x, x + 1] if i != axis else [0, 0] for i, x in enumerate(corner)]
            far = [list(iv) for iv in near]
            far[axis] = [m, m]
            identify.append([far, near, 1])
    return {"type": "cubical", "boxes": boxes, "identify": identify}
