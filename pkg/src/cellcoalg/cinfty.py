"""Rational C-infinity machinery inside completed tensor algebras.

Free graded Lie algebras are handled through their embedding in the tensor
algebra: a bracket is the graded commutator ``xy - (-1)^{|x||y|} yx`` and
completions are truncations at a weight (word length) ``N``.  A Lie
element of weight k is recognised by ``theta(P) = k P`` where ``theta``
brackets every word to the left, ``x1 x2 ... xk -> [...[x1, x2], ...], xk]``.

Derivations have degree -1 and follow ``d(xy) = d(x) y + (-1)^{|x|} x d(y)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .cochains import PreconditionError, Report
from .free import Element, add_into
from .scalars import QQ, bernoulli


# graded spaces and series ----------------------------------------------------------

class GradedSpace:
    """Named generators with integer degrees; names are unique, order is kept."""

    def __init__(self, generators):
        items = list(generators.items()) if isinstance(generators, dict) else list(generators)
        names = [str(n) for n, _ in items]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.names = tuple(names)
        self.degrees = {str(n): int(d) for n, d in items}

    def degree(self, name: str) -> int:
        return self.degrees[name]

    def word_degree(self, word: tuple) -> int:
        return sum(self.degrees[x] for x in word)

    def shifted(self, by: int) -> "GradedSpace":
        return GradedSpace([(n, self.degrees[n] + by) for n in self.names])

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and other.names == self.names \
            and other.degrees == self.degrees

    def __hash__(self):
        return hash((self.names, tuple(sorted(self.degrees.items()))))

    def __repr__(self):
        return "GradedSpace(" + ", ".join(f"{n}:{self.degrees[n]}" for n in self.names) + ")"


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class TensorSeries:
    """Truncation at weight ``N`` of a series in the completed tensor algebra.

    ``terms`` maps nonempty words (tuples of generator names) to nonzero
    rationals; words longer than ``N`` are dropped on construction.
    """

    __slots__ = ("space", "N", "terms")

    def __init__(self, space: GradedSpace, N: int, terms=None):
        self.space = space
        self.N = int(N)
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if not w:
                raise ValueError("the empty word is not in the augmentation ideal")
            for x in w:
                if x not in space.degrees:
                    raise ValueError(f"unknown generator {x!r}")
            if len(w) <= self.N and c:
                clean[w] = clean.get(w, 0) + _q(c)
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def generator(cls, space: GradedSpace, name: str, N: int) -> "TensorSeries":
        return cls(space, N, {(name,): 1})

    @classmethod
    def zero(cls, space: GradedSpace, N: int) -> "TensorSeries":
        return cls(space, N)

    def _like(self, terms) -> "TensorSeries":
        return TensorSeries(self.space, self.N, terms)

    def _check(self, other: "TensorSeries"):
        if other.N != self.N:
            raise PreconditionError(f"truncation mismatch: {self.N} vs {other.N}")
        if other.space != self.space:
            raise PreconditionError("series over different generators")

    def __add__(self, other):
        self._check(other)
        return self._like(add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return self._like(add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "TensorSeries":
        c = _q(c)
        return self._like({w: c * v for w, v in self.terms.items()})

    __rmul__ = scale

    def __mul__(self, other):
        if not isinstance(other, TensorSeries):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                if len(u) + len(v) <= self.N:
                    add_into(out, {u + v: a * b})
        return self._like(out)

    def __eq__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        return other.space == self.space and other.terms == self.terms

    def is_zero(self) -> bool:
        return not self.terms

    def weight_part(self, k: int) -> "TensorSeries":
        return self._like({w: c for w, c in self.terms.items() if len(w) == k})

    def weights(self) -> list[int]:
        return sorted({len(w) for w in self.terms})

    def degrees(self) -> set:
        return {self.space.word_degree(w) for w in self.terms}

    def degree(self):
        """The common degree of all words, or ``None`` for zero; error if mixed."""
        ds = self.degrees()
        if len(ds) > 1:
            raise PreconditionError(f"series is not homogeneous (degrees {sorted(ds)})")
        return ds.pop() if ds else None

    def truncate(self, N: int) -> "TensorSeries":
        return TensorSeries(self.space, N, self.terms)

    def as_element(self) -> Element:
        return Element(self.terms, QQ)

    def serialize(self) -> list:
        return [[list(w), QQ.to_json(c)] for w, c in sorted(self.terms.items(),
                                                              key=lambda t: (len(t[0]), t[0]))]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            parts.append(f"{c}*{''.join(w) if all(len(x) == 1 for x in w) else '.'.join(w)}")
        return " + ".join(parts)


def graded_bracket(x: TensorSeries, y: TensorSeries) -> TensorSeries:
    """``xy - (-1)^{|x||y|} yx``, extended bilinearly over homogeneous parts."""
    x._check(y)
    sp, N = x.space, x.N
    out: dict = {}
    for u, a in x.terms.items():
        du = sp.word_degree(u)
        for v, b in y.terms.items():
            if len(u) + len(v) > N:
                continue
            s = -1 if (du * sp.word_degree(v)) % 2 else 1
            add_into(out, {u + v: a * b})
            add_into(out, {v + u: -s * a * b})
    return TensorSeries(sp, N, out)


def ad_power(x: TensorSeries, y: TensorSeries, k: int) -> TensorSeries:
    """``(ad_x)^k y``."""
    for _ in range(k):
        y = graded_bracket(x, y)
    return y


# Lie elements -----------------------------------------------------------------------------

def left_bracketing(space: GradedSpace, word: tuple) -> dict:
    """``[...[x1, x2], ...], xk]`` expanded in the tensor algebra."""
    return dict(_left_bracketing(space, tuple(word)))


@lru_cache(maxsize=None)
def _left_bracketing(space: GradedSpace, word: tuple) -> tuple:
    acc = {word[:1]: 1}
    deg = space.degree(word[0])
    for x in word[1:]:
        dx = space.degree(x)
        s = -1 if (deg * dx) % 2 else 1
        nxt: dict = {}
        for u, c in acc.items():
            add_into(nxt, {u + (x,): c})
            add_into(nxt, {(x,) + u: -s * c})
        acc = nxt
        deg += dx
    return tuple(acc.items())


def dynkin_defects(P: TensorSeries) -> list[int]:
    """Weights k at which the weight-k part of ``P`` is not fixed by
    ``theta / k``; empty exactly when ``P`` is a Lie series (over Q)."""
    bad = []
    for k in P.weights():
        part = P.weight_part(k)
        img: dict = {}
        for w, c in part.terms.items():
            add_into(img, dict(_left_bracketing(P.space, w)), c)
        if add_into(img, part.terms, -k):
            bad.append(k)
    return bad


def is_lie_element(P: TensorSeries) -> bool:
    return not dynkin_defects(P)


# derivations ---------------------------------------------------------------------------------

class LieDerivationData:
    """A derivation of the truncated tensor algebra given on generators.

    ``values[g]`` is the image of generator ``g``; every value is checked to
    be a Lie series of the right degree unless ``check=False``.
    """

    def __init__(self, space: GradedSpace, values: dict, N: int, degree: int = -1,
                 check: bool = True):
        self.space = space
        self.N = int(N)
        self.degree = degree
        self.values = {}
        for g in space.names:
            v = values.get(g)
            v = TensorSeries.zero(space, N) if v is None else v.truncate(N)
            self.values[g] = v
        for g in values:
            if g not in space.degrees:
                raise ValueError(f"unknown generator {g!r}")
        if check:
            for g, v in self.values.items():
                d = v.degree()
                if d is not None and d != space.degree(g) + degree:
                    raise PreconditionError(
                        f"d({g}) has degree {d}, expected {space.degree(g) + degree}")
                if not is_lie_element(v):
                    raise PreconditionError(f"d({g}) is not a Lie series")

    def lie_certificate(self) -> dict:
        """``{generator: failing weights}``; all lists empty when every value is Lie."""
        return {g: dynkin_defects(v) for g, v in self.values.items()}

    def on_word(self, word: tuple) -> dict:
        out: dict = {}
        prefix_deg = 0
        for j, x in enumerate(word):
            s = -1 if (prefix_deg * self.degree) % 2 else 1
            head, tail = word[:j], word[j + 1:]
            room = self.N - len(head) - len(tail)
            for w, c in self.values[x].terms.items():
                if len(w) <= room:
                    add_into(out, {head + w + tail: s * c})
            prefix_deg += self.space.degree(x)
        return out

    def __call__(self, x: TensorSeries) -> TensorSeries:
        if x.space != self.space:
            raise PreconditionError("series over different generators")
        out: dict = {}
        for w, c in x.terms.items():
            add_into(out, self.on_word(w), c)
        return TensorSeries(self.space, min(self.N, x.N), out)

    def to_json(self) -> dict:
        return {g: v.serialize() for g, v in self.values.items()}


def extend_derivation(d: LieDerivationData):
    """The Leibniz extension of ``d`` as a callable on series."""
    return d


def check_square_zero(d: LieDerivationData, N: int | None = None) -> dict:
    """Evaluate ``d o d`` on every generator through weight ``N``.

    Returns ``{"holds": bool, "first_failing_weight": k or None,
    "generator": name or None}``.
    """
    N = d.N if N is None else min(N, d.N)
    first, where = None, None
    for g in d.space.names:
        dd = d(d(TensorSeries.generator(d.space, g, N)))
        for k in dd.weights():
            if first is None or k < first:
                first, where = k, g
            break
    return {"holds": first is None, "first_failing_weight": first, "generator": where,
            "weight": N}


# Quillen construction ------------------------------------------------------------------------

class Coalgebra:
    """A graded coalgebra given by generators, boundary and coproduct.

    ``boundary[c] = {x: coeff}``; ``coproduct[c] = {(a, b): coeff}``.
    """

    def __init__(self, generators, boundary=None, coproduct=None):
        self.space = GradedSpace(generators)
        self.boundary = {c: {x: _q(v) for x, v in (boundary or {}).get(c, {}).items() if v}
                         for c in self.space.names}
        self.coproduct = {c: {tuple(k): _q(v) for k, v in (coproduct or {}).get(c, {}).items() if v}
                          for c in self.space.names}
        for table in (boundary or {}, coproduct or {}):
            for c in table:
                if c not in self.space.degrees:
                    raise ValueError(f"unknown generator {c!r}")
        deg = self.space.degree
        for c, img in self.boundary.items():
            for x in img:
                if x not in self.space.degrees or deg(x) != deg(c) - 1:
                    raise PreconditionError(f"boundary of {c} is not of degree {deg(c) - 1}")
        for c, img in self.coproduct.items():
            for a, b in img:
                if a not in self.space.degrees or b not in self.space.degrees \
                        or deg(a) + deg(b) != deg(c):
                    raise PreconditionError(f"coproduct of {c} is not of degree {deg(c)}")

    def is_cocommutative(self) -> bool:
        deg = self.space.degree
        for img in self.coproduct.values():
            swapped = {}
            for (a, b), v in img.items():
                s = -1 if (deg(a) * deg(b)) % 2 else 1
                add_into(swapped, {(b, a): s * v})
            if swapped != img:
                return False
        return True

    def boundary_squares_to_zero(self) -> bool:
        for c in self.space.names:
            acc: dict = {}
            for x, v in self.boundary[c].items():
                add_into(acc, self.boundary[x], v)
            if acc:
                return False
        return True

    def is_coassociative(self) -> bool:
        """``(Delta (x) id) Delta == (id (x) Delta) Delta`` on every generator.

        Not a precondition of the Quillen construction as stated, but when it
        fails the quadratic part of the differential cannot square to zero.
        """
        deg = self.space.degree
        for c in self.space.names:
            lhs: dict = {}
            rhs: dict = {}
            for (a, b), v in self.coproduct[c].items():
                for (x, y), u in self.coproduct[a].items():
                    add_into(lhs, {(x, y, b): u * v})
                for (x, y), u in self.coproduct[b].items():
                    add_into(rhs, {(a, x, y): u * v})
            if lhs != rhs:
                return False
        return True

    def symmetrized(self) -> "Coalgebra":
        """The coalgebra with coproduct ``(Delta + (12) Delta) / 2``."""
        deg = self.space.degree
        cop = {}
        for c, img in self.coproduct.items():
            acc: dict = {}
            for (a, b), v in img.items():
                s = -1 if (deg(a) * deg(b)) % 2 else 1
                add_into(acc, {(a, b): v / 2})
                add_into(acc, {(b, a): s * v / 2})
            cop[c] = acc
        return Coalgebra([(n, deg(n)) for n in self.space.names], self.boundary, cop)


def quillen_construction(C: Coalgebra, N: int = 6) -> LieDerivationData:
    """``l_1 + l_2`` on the free Lie algebra on the desuspension of ``C``.

    ``l_1(c') = -(dc)'`` and ``l_2(c') = 1/2 sum (-1)^{|a|} [a', b']`` for
    ``Delta c = sum a (x) b``; primes denote desuspension.
    """
    if not C.is_cocommutative():
        raise PreconditionError("the coproduct is not cocommutative")
    if not C.boundary_squares_to_zero():
        raise PreconditionError("the boundary does not square to zero")
    L = C.space.shifted(-1)
    values = {}
    for c in L.names:
        acc = TensorSeries.zero(L, N)
        acc = acc - TensorSeries(L, N, {(x,): v for x, v in C.boundary[c].items()})
        for (a, b), v in C.coproduct[c].items():
            s = -1 if C.space.degree(a) % 2 else 1
            br = graded_bracket(TensorSeries.generator(L, a, N), TensorSeries.generator(L, b, N))
            acc = acc + br.scale(Fraction(s, 2) * v)
        values[c] = acc
    return LieDerivationData(L, values, N)


# Lawrence-Sullivan interval -----------------------------------------------------------------

LS_SPACE = GradedSpace([("a", -1), ("b", -1), ("e", 0)])


def ls_interval(N: int = 8, bernoulli_fn=bernoulli) -> LieDerivationData:
    """The interval differential on ``a, b`` (degree -1) and ``e`` (degree 0).

    ``d a = -[a,a]/2``, ``d b = -[b,b]/2`` (so both are flat) and
    ``d e = [e, b] + sum_i B_i/i! (ad_e)^i (b - a)``, truncated at weight N.
    ``bernoulli_fn`` exists for mutation testing.
    """
    if N < 1:
        raise PreconditionError("weight N must be at least 1")
    sp = LS_SPACE
    a, b, e = (TensorSeries.generator(sp, g, N) for g in ("a", "b", "e"))
    de = graded_bracket(e, b)
    term = b - a
    for i in range(N):
        de = de + term.scale(Fraction(bernoulli_fn(i)) / factorial(i))
        term = graded_bracket(e, term)
    values = {"a": graded_bracket(a, a).scale(Fraction(-1, 2)),
              "b": graded_bracket(b, b).scale(Fraction(-1, 2)),
              "e": de}
    return LieDerivationData(sp, values, N)


def is_flat(u: TensorSeries, d: LieDerivationData, N: int | None = None) -> dict:
    """Check the Maurer-Cartan equation ``d u + [u, u] / 2 = 0`` through weight ``N``.

    This is the sign under which the interval differential squares to zero
    and its flow preserves flatness, given the Leibniz rule used here.
    """
    N = d.N if N is None else min(N, d.N)
    deg = u.degree()
    if deg is not None and deg != -1:
        raise PreconditionError(f"flat elements have degree -1, got {deg}")
    u = u.truncate(N)
    diff = d(u) + graded_bracket(u, u).scale(Fraction(1, 2))
    w = diff.weights()
    return {"holds": not w, "first_failing_weight": w[0] if w else None, "weight": N}


def flow(v: TensorSeries, u0: TensorSeries, t, d: LieDerivationData,
         N: int | None = None) -> TensorSeries:
    """Value at time ``t`` of the formal solution of ``du/dt = dv - [v, u]``.

    Writing ``u = sum u_n t^n`` gives ``(n+1) u_{n+1} = [n = 0] dv - [v, u_n]``.
    Since ``v`` has no weight-0 part, ``u_n`` only has words of length at
    least ``n``, so the sum is finite at weight ``N``.
    """
    N = d.N if N is None else min(N, d.N)
    if v.degree() not in (0, None):
        raise PreconditionError("the flow is generated by a degree-0 element")
    if u0.degree() not in (-1, None):
        raise PreconditionError("the flow starts at a degree -1 element")
    t = _q(t)
    v, u = v.truncate(N), u0.truncate(N)
    dv = d(v)
    total = u
    power = Fraction(1)
    n = 0
    while not u.is_zero() or n == 0:
        nxt = graded_bracket(v, u).scale(-1)
        if n == 0:
            nxt = nxt + dv
        u = nxt.scale(Fraction(1, n + 1))
        n += 1
        power *= t
        total = total + u.scale(power)
        if n > N + 1:
            break
    return total


# A-infinity coalgebras -------------------------------------------------------------------

class AInftyData:
    """Maps ``k -> {generator: {word of length k: coeff}}`` for ``1 <= k <= K``.

    ``kind`` is ``"coproduct"`` (the maps Delta_k, degree k-2, on ``space``)
    or ``"codifferential"`` (the components d_k, degree -1, on the
    desuspended space).
    """

    def __init__(self, space: GradedSpace, maps: dict, K: int, kind: str = "coproduct"):
        if kind not in ("coproduct", "codifferential"):
            raise ValueError(f"unknown kind {kind!r}")
        self.space = space
        self.K = int(K)
        self.kind = kind
        self.maps = {}
        for k in range(1, self.K + 1):
            table = maps.get(k, {})
            self.maps[k] = {}
            for g in space.names:
                img = {tuple(w): _q(c) for w, c in table.get(g, {}).items() if c}
                for w in img:
                    if len(w) != k:
                        raise ValueError(f"map {k} on {g} has a word of length {len(w)}")
                    expected = space.degree(g) + (k - 2 if kind == "coproduct" else -1)
                    if space.word_degree(w) != expected:
                        raise PreconditionError(
                            f"map {k} on {g} is not of the expected degree")
                self.maps[k][g] = img

    def component(self, k: int, g: str) -> dict:
        if k > self.K:
            return {}
        return self.maps[k][g]

    def __eq__(self, other):
        return isinstance(other, AInftyData) and other.space == self.space \
            and other.K == self.K and other.kind == self.kind and other.maps == self.maps

    def to_json(self) -> dict:
        return {str(k): {g: [[list(w), QQ.to_json(c)] for w, c in sorted(img.items())]
                         for g, img in table.items()} for k, table in self.maps.items()}


def ls_cinfty_data(K: int = 6, bernoulli_fn=bernoulli) -> AInftyData:
    """The interval coproducts on ``c`` (degree 1) and ``y, z`` (degree 0)."""
    sp = GradedSpace([("c", 1), ("y", 0), ("z", 0)])
    maps: dict = {1: {"c": {("y",): 1, ("z",): -1}},
                  2: {"c": {("c", "y"): Fraction(-1, 2), ("c", "z"): Fraction(-1, 2),
                            ("y", "c"): Fraction(-1, 2), ("z", "c"): Fraction(-1, 2)},
                      "y": {("y", "y"): -1}, "z": {("z", "z"): -1}}}
    for k in range(3, K + 1):
        B = Fraction(bernoulli_fn(k - 1))
        img: dict = {}
        for p in range(k):
            q = k - 1 - p
            coeff = B / (factorial(p) * factorial(q))
            add_into(img, {("c",) * p + ("y",) + ("c",) * q: coeff})
            add_into(img, {("c",) * p + ("z",) + ("c",) * q: -coeff})
        maps[k] = {"c": img}
    return AInftyData(sp, maps, K)


def _apply_middle(A: AInftyData, k: int, m: int, word: tuple) -> dict:
    """``(id^m (x) Delta_k (x) id^n)`` on a basis word.

    The Koszul sign counts the letters to the right of ``Delta_k``.  With
    the sign taken over the prefix instead, the relation as written already
    fails at i = 3 on the interval data below.
    """
    sp = A.space
    x = word[m]
    s = -1 if ((k - 2) * sp.word_degree(word[m + 1:])) % 2 else 1
    out = {}
    for w, c in A.component(k, x).items():
        add_into(out, {word[:m] + w + word[m + 1:]: s * c})
    return out


def ainf_relation_defects(A: AInftyData, i: int) -> dict:
    """``sum_{k,n} (-1)^{k+n+kn} (id^{i-k-n} (x) Delta_k (x) id^n) o Delta_{i-k+1}``
    on every generator; returns the nonzero values."""
    if A.kind != "coproduct":
        raise PreconditionError("the relation is stated for coproducts")
    if i > A.K or i < 1:
        raise PreconditionError(f"relation {i} needs 1 <= i <= K = {A.K}")
    out = {}
    for g in A.space.names:
        acc: dict = {}
        for k in range(1, i + 1):
            for n in range(0, i - k + 1):
                m = i - k - n
                sign = -1 if (k + n + k * n) % 2 else 1
                for w, c in A.component(i - k + 1, g).items():
                    add_into(acc, _apply_middle(A, k, m, w), sign * c)
        if acc:
            out[g] = acc
    return out


def ainf_relation_check(A: AInftyData, i: int) -> Report:
    bad = ainf_relation_defects(A, i)
    rep = Report(f"ainf_relation(i={i})", len(A.space.names))
    for g, defect in sorted(bad.items()):
        rep.failures.append({"generator": g,
                             "defect": [[list(w), QQ.to_json(c)] for w, c in sorted(defect.items())]})
    return rep


def _desuspension_sign(space: GradedSpace, word: tuple) -> int:
    """Sign of ``(s^{-1})^{(x)k}`` on ``x1 (x) ... (x) xk``: each ``s^{-1}``
    passes the factors to its left."""
    e = 0
    before = 0
    for x in word:
        e += before
        before += space.degree(x)
    return -1 if e % 2 else 1


def ainf_codiff_correspondence(A: AInftyData, direction: str = "to_codifferential") -> AInftyData:
    """Translate between coproducts Delta_k and codifferential components d_k.

    ``d_k = -(-1)^{k(k+1)/2} (s^{-1})^{(x)k} o Delta_k o s`` in the forward
    direction; the reverse direction is its exact inverse,
    ``Delta_k = -(-1)^k s^{(x)k} o d_k o s^{-1}``.
    """
    if direction == "to_codifferential":
        if A.kind != "coproduct":
            raise PreconditionError("expected coproduct data")
        sp = A.space
        maps = {}
        for k in range(1, A.K + 1):
            pre = -1 if (k * (k + 1) // 2) % 2 == 0 else 1
            maps[k] = {g: {w: pre * _desuspension_sign(sp, w) * c
                           for w, c in A.component(k, g).items()} for g in sp.names}
        return AInftyData(sp.shifted(-1), maps, A.K, "codifferential")
    if direction == "to_coproducts":
        if A.kind != "codifferential":
            raise PreconditionError("expected codifferential data")
        sp = A.space.shifted(1)
        maps = {}
        for k in range(1, A.K + 1):
            # (s^{-1})^{(x)k} o s^{(x)k} = (-1)^{k(k-1)/2}; invert the forward map
            pre = -1 if (k * (k + 1) // 2) % 2 == 0 else 1
            maps[k] = {g: {w: pre * _desuspension_sign(sp, w) * c
                           for w, c in A.component(k, g).items()} for g in sp.names}
        return AInftyData(sp, maps, A.K, "coproduct")
    raise ValueError(f"unknown direction {direction!r}")


def codifferential_derivation(D: AInftyData, N: int | None = None) -> LieDerivationData:
    """The derivation ``d = sum_k d_k`` of the truncated tensor algebra."""
    if D.kind != "codifferential":
        raise PreconditionError("expected codifferential data")
    N = D.K if N is None else N
    values = {}
    for g in D.space.names:
        acc: dict = {}
        for k in range(1, D.K + 1):
            add_into(acc, D.component(k, g))
        values[g] = TensorSeries(D.space, N, acc)
    return LieDerivationData(D.space, values, N, check=False)


def _shuffles(k: int, i: int):
    """Index sets of the first block of the (i, k-i)-shuffles."""
    return combinations(range(k), i)


def shuffle_coproduct(space: GradedSpace, word: tuple) -> dict:
    """``tau`` on one word: signed sum over unshuffles into two nonempty words.

    The sign is the Koszul sign of moving the letters into place, computed
    with the degrees of ``space``.
    """
    k = len(word)
    out: dict = {}
    degs = [space.degree(x) for x in word]
    for i in range(1, k):
        for first in _shuffles(k, i):
            chosen = set(first)
            second = [j for j in range(k) if j not in chosen]
            # Koszul sign: every pair (a in second, b in first) with a < b swaps
            e = sum(degs[a] * degs[b] for a in second for b in first if a < b)
            left = tuple(word[j] for j in first)
            right = tuple(word[j] for j in second)
            add_into(out, {(left, right): -1 if e % 2 else 1})
    return out


def cinf_shuffle_defects(A: AInftyData, k: int) -> dict:
    """``tau`` applied to ``Delta_k`` of every generator.

    The shuffle signs are those of the desuspended letters: ``Delta_k`` is
    first moved to ``(s^{-1}C)^{(x)k}``, where the C-infinity condition says
    its image consists of primitives of the unshuffle coproduct.
    """
    if k > A.K:
        raise PreconditionError(f"k = {k} exceeds the cutoff K = {A.K}")
    D = A if A.kind == "codifferential" else ainf_codiff_correspondence(A)
    out = {}
    for g in D.space.names:
        acc: dict = {}
        for w, c in D.component(k, g).items():
            add_into(acc, shuffle_coproduct(D.space, w), c)
        if acc:
            out[g] = acc
    return out


def cinf_shuffle_check(A: AInftyData, k: int) -> Report:
    bad = cinf_shuffle_defects(A, k)
    rep = Report(f"cinf_shuffle(k={k})", len(A.space.names))
    for g, defect in sorted(bad.items()):
        rep.failures.append({"generator": g, "terms": len(defect)})
    return rep
