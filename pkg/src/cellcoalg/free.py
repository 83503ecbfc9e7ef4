"""Free graded modules, tensor powers and graded linear maps.

Basis labels of the r-fold tensor power are r-tuples of factor labels, so a
chain ``[0,1]`` is the label ``((0, 1),)`` and ``[0] (x) [0,1]`` is
``((0,), (0, 1))``.  The empty tuple labels the ground ring (r = 0).

Degrees of factor labels are supplied by a ``deg`` callable; the tensor
degree is the sum.  Two sign rules are fixed here and used everywhere:

* applying maps: ``(f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b)``;
* boundary of tensors: ``d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from fractions import Fraction
from itertools import product

from .scalars import ZZ, RingTag, Scalar


def add_into(acc: dict, terms: Mapping, coeff=1) -> dict:
    """``acc += coeff * terms`` on raw coefficient dicts, pruning zeros."""
    for label, c in terms.items():
        v = acc.get(label, 0) + coeff * c
        if v:
            acc[label] = v
        else:
            acc.pop(label, None)
    return acc


def _sort_key(label):
    return label


class Element:
    """Finite linear combination of basis labels with exact coefficients.

    Stored zero-free and in sorted label order, so equality is syntactic.
    """

    __slots__ = ("_terms", "ring")

    def __init__(self, terms: Mapping | Iterable | None = None, ring: RingTag = ZZ):
        self.ring = ring
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for label, c in items:
                c = ring.coerce(c)
                acc[label] = ring.add(acc.get(label, ring.zero()), c)
        self._terms = {k: acc[k] for k in sorted(acc, key=_sort_key) if acc[k] != 0}

    @classmethod
    def basis(cls, label, ring: RingTag = ZZ) -> "Element":
        return cls({label: 1}, ring)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def labels(self):
        return list(self._terms)

    def coefficient(self, label):
        return self._terms.get(label, self.ring.zero())

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = self.ring.add(acc.get(k, self.ring.zero()), v)
        return Element(acc, self.ring)

    def __neg__(self) -> "Element":
        return Element({k: self.ring.neg(v) for k, v in self._terms.items()}, self.ring)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = self.ring.coerce(c)
        return Element({k: self.ring.mul(c, v) for k, v in self._terms.items()}, self.ring)

    def __rmul__(self, c) -> "Element":
        if isinstance(c, (int, Fraction, Scalar)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring == other.ring and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, tuple(self._terms.items())))

    def map_labels(self, f: Callable) -> "Element":
        return Element(((f(k), v) for k, v in self._terms.items()), self.ring)

    def change_ring(self, ring: RingTag) -> "Element":
        return Element(self._terms, ring)

    def degrees(self, deg: Callable) -> set:
        return {tensor_degree(k, deg) for k in self._terms}

    def is_homogeneous(self, deg: Callable) -> bool:
        return len(self.degrees(deg)) <= 1

    def serialize(self, label_to_json: Callable = list) -> list:
        """Canonical form: ``[[label, coefficient], ...]`` in label order."""
        return [[label_to_json(k), self.ring.to_json(v)] for k, v in self._terms.items()]

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{self.ring.format(v)}*{k}" for k, v in self._terms.items())


def tensor_degree(label: tuple, deg: Callable) -> int:
    return sum(deg(x) for x in label)


def tensor_elements(*xs: Element) -> Element:
    """``x_1 (x) ... (x) x_k`` for elements of tensor powers (no signs arise)."""
    ring = xs[0].ring
    acc: dict = {}
    for combo in product(*(x.items() for x in xs)):
        label = tuple(f for lab, _ in combo for f in lab)
        c = 1
        for _, v in combo:
            c = c * v
        acc[label] = acc.get(label, 0) + c
    return Element(acc, ring)


class GradedMap:
    """A homogeneous linear map between tensor powers.

    ``on_basis`` sends a label (an ``arity``-tuple of factor labels) to a
    mapping label -> coefficient.  ``arity=None`` accepts labels of any
    length (used for tensor boundaries and permutations).
    """

    def __init__(self, on_basis: Callable, degree: int, deg: Callable,
                 arity: int | None = 1, name: str = ""):
        self.on_basis = on_basis
        self.degree = degree
        self.deg = deg
        self.arity = arity
        self.name = name

    def raw(self, label: tuple) -> dict:
        if self.arity is not None and len(label) != self.arity:
            raise ValueError(f"{self.name or 'map'} expects {self.arity} factors, got {len(label)}")
        out = self.on_basis(label)
        return out.terms if isinstance(out, Element) else out

    def __call__(self, x: Element) -> Element:
        acc: dict = {}
        for label, c in x.items():
            add_into(acc, self.raw(label), c)
        return Element(acc, x.ring)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        def on_basis(label):
            acc: dict = {}
            for mid, c in other.raw(label).items():
                add_into(acc, self.raw(mid), c)
            return acc
        return GradedMap(on_basis, self.degree + other.degree, self.deg, other.arity,
                         f"({self.name} o {other.name})")

    def _combine(self, other: "GradedMap", s: int) -> "GradedMap":
        if other.degree != self.degree:
            raise ValueError("cannot add maps of different degrees")

        def on_basis(label):
            acc = add_into({}, self.raw(label))
            return add_into(acc, other.raw(label), s)
        return GradedMap(on_basis, self.degree, self.deg, self.arity,
                         f"({self.name} {'+' if s > 0 else '-'} {other.name})")

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return GradedMap(lambda lab: {k: -v for k, v in self.raw(lab).items()},
                         self.degree, self.deg, self.arity, f"-{self.name}")

    def scaled(self, c) -> "GradedMap":
        return GradedMap(lambda lab: {k: c * v for k, v in self.raw(lab).items()},
                         self.degree, self.deg, self.arity, f"{c}{self.name}")

    def __repr__(self):
        return f"GradedMap({self.name or '?'}, degree={self.degree}, arity={self.arity})"


def zero_map(degree: int, deg: Callable, arity: int | None = 1) -> GradedMap:
    return GradedMap(lambda lab: {}, degree, deg, arity, "0")


def identity(deg: Callable, arity: int | None = 1) -> GradedMap:
    return GradedMap(lambda lab: {lab: 1}, 0, deg, arity, "id")


def tensor(*maps: GradedMap) -> GradedMap:
    """``f_1 (x) ... (x) f_k`` with the Koszul sign ``(-1)^{|f_j| |a_l|}``, l < j."""
    if any(m.arity is None for m in maps):
        raise ValueError("tensor product needs maps of fixed arity")
    deg = maps[0].deg
    arities = [m.arity for m in maps]
    total = sum(arities)

    def on_basis(label):
        if len(label) != total:
            raise ValueError(f"arity mismatch: maps consume {total} factors, label has {len(label)}")
        chunks = []
        pos = 0
        sign_exp = 0
        seen = 0
        for m, a in zip(maps, arities):
            chunk = label[pos:pos + a]
            pos += a
            sign_exp += m.degree * seen
            seen += tensor_degree(chunk, deg)
            chunks.append(m.raw(chunk))
        sign = -1 if sign_exp % 2 else 1
        acc: dict = {}
        for combo in product(*(c.items() for c in chunks)):
            lab = tuple(f for part, _ in combo for f in part)
            c = sign
            for _, v in combo:
                c *= v
            acc[lab] = acc.get(lab, 0) + c
        return {k: v for k, v in acc.items() if v}

    name = " (x) ".join(m.name or "?" for m in maps)
    return GradedMap(on_basis, sum(m.degree for m in maps), deg, total, name)


def tensor_apply(maps: list[GradedMap], x: Element) -> Element:
    return tensor(*maps)(x)


def permutation_sign(sigma: tuple, label: tuple, deg: Callable) -> int:
    degs = [deg(f) for f in label]
    e = 0
    r = len(sigma)
    for j in range(r):
        for l in range(j + 1, r):
            if sigma[j] > sigma[l]:
                e += degs[sigma[j]] * degs[sigma[l]]
    return -1 if e % 2 else 1


def permute_label(sigma: tuple, label: tuple, deg: Callable) -> tuple[tuple, int]:
    """Output factor j is input factor ``sigma[j]``; returns (label, Koszul sign)."""
    if len(sigma) != len(label):
        raise ValueError(f"permutation of size {len(sigma)} on {len(label)} factors")
    return tuple(label[s] for s in sigma), permutation_sign(sigma, label, deg)


def permutation_map(sigma: tuple, deg: Callable) -> GradedMap:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(len(sigma))):
        raise ValueError(f"{sigma} is not a permutation")

    def on_basis(label):
        lab, s = permute_label(sigma, label, deg)
        return {lab: s}
    return GradedMap(on_basis, 0, deg, len(sigma), f"perm{sigma}")


def permute_factors(sigma: tuple, x: Element, deg: Callable) -> Element:
    """Reorder tensor factors: output factor j is input factor ``sigma[j]``.

    With this convention acting by ``s t`` equals acting by ``s`` and then
    by ``t``.
    """
    return permutation_map(sigma, deg)(x)


def cycle(r: int) -> tuple:
    """The generator rho of the cyclic group: moves the first factor last."""
    return tuple(range(1, r)) + (0,)


def tensor_boundary(d: Callable, deg: Callable) -> GradedMap:
    """Boundary of tensor powers (any arity) from a boundary on factors."""
    def on_basis(label):
        acc: dict = {}
        seen = 0
        for i, f in enumerate(label):
            s = -1 if seen % 2 else 1
            for g, c in d(f).items():
                lab = label[:i] + (g,) + label[i + 1:]
                v = acc.get(lab, 0) + s * c
                if v:
                    acc[lab] = v
                else:
                    acc.pop(lab, None)
            seen += deg(f)
        return acc
    return GradedMap(on_basis, -1, deg, None, "d")


def hom_boundary(f: GradedMap, boundary_src: GradedMap, boundary_tgt: GradedMap) -> GradedMap:
    """The differential of Hom: ``d o f - (-1)^{|f|} f o d``."""
    s = -1 if f.degree % 2 else 1

    def on_basis(label):
        acc: dict = {}
        for mid, c in f.raw(label).items():
            add_into(acc, boundary_tgt.raw(mid), c)
        for mid, c in boundary_src.raw(label).items():
            add_into(acc, f.raw(mid), -s * c)
        return acc
    return GradedMap(on_basis, f.degree - 1, f.deg, f.arity, f"d[{f.name}]")


def agree_on(f: GradedMap, g: GradedMap, labels: Iterable) -> list:
    """Labels on which two maps differ (empty list means they agree)."""
    bad = []
    for lab in labels:
        if add_into(add_into({}, f.raw(lab)), g.raw(lab), -1):
            bad.append(lab)
    return bad
