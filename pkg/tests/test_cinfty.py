from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cellcoalg import cinfty as ci
from cellcoalg.cochains import PreconditionError
from cellcoalg.scalars import bernoulli
from cellcoalg.selfcheck import quillen_samples

TS = ci.TensorSeries
SPACE = ci.GradedSpace([("x", 0), ("u", 1), ("v", -1)])


def gen(name, N=4, sp=SPACE):
    return TS.generator(sp, name, N)


words = st.lists(st.sampled_from(["x", "u", "v"]), min_size=1, max_size=2).map(tuple)


@st.composite
def series(draw):
    """A homogeneous series: every word shares the degree of the first one."""
    first = draw(words)
    target = SPACE.word_degree(first)
    rest = draw(st.lists(words.filter(lambda w: SPACE.word_degree(w) == target), max_size=2))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(rest) + 1, max_size=len(rest) + 1))
    return TS(SPACE, 6, dict(zip([first] + rest, coeffs)))


def test_bracket_examples():
    assert ci.graded_bracket(gen("x"), gen("x")).is_zero()
    assert ci.graded_bracket(gen("u"), gen("u")) == TS(SPACE, 4, {("u", "u"): 2})


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_jacobi_and_antisymmetry(a, b, c):
    br = ci.graded_bracket
    if any(x.degree() is None for x in (a, b)):
        return
    sign = -1 if (a.degree() * b.degree()) % 2 else 1
    assert br(a, b) == br(b, a).scale(-sign)
    # br(a, br(b, c)) = br(br(a, b), c) + (-1)^{|a||b|} br(b, br(a, c))
    assert br(a, br(b, c)) == br(br(a, b), c) + br(b, br(a, c)).scale(sign)


def test_truncation_mismatch():
    with pytest.raises(PreconditionError):
        gen("x", 3) + gen("x", 4)


def test_zero_derivation():
    d = ci.LieDerivationData(SPACE, {}, 4)
    assert d(gen("u") * gen("x")).is_zero()
    assert ci.check_square_zero(d)["holds"]


def test_leibniz_on_even_square():
    sp = ci.GradedSpace([("g", 2), ("h", 1)])
    g = gen("g", 4, sp)
    h = gen("h", 4, sp)
    d = ci.LieDerivationData(sp, {"g": h}, 4, check=False)
    assert d(g * g) == h * g + g * h


def test_leibniz_on_odd_square():
    sp = ci.GradedSpace([("g", 1), ("h", 0)])
    g, h = gen("g", 4, sp), gen("h", 4, sp)
    d = ci.LieDerivationData(sp, {"g": h}, 4, check=False)
    assert d(g * g) == h * g - g * h


def test_derivation_rejects_non_lie_values():
    sp = ci.GradedSpace([("g", 1), ("h", 0), ("k", 0)])
    with pytest.raises(PreconditionError):
        ci.LieDerivationData(sp, {"g": gen("h", 4, sp) * gen("k", 4, sp)}, 4)
    with pytest.raises(PreconditionError):
        ci.LieDerivationData(sp, {"g": gen("g", 4, sp)}, 4)


def test_dynkin_certificate():
    br = ci.graded_bracket
    x, u = gen("x"), gen("u")
    assert ci.is_lie_element(br(x, br(x, u)))
    assert not ci.is_lie_element(x * u)
    assert ci.dynkin_defects(x * u) == [2]


# the interval -----------------------------------------------------------------------

def test_interval_low_weights():
    d = ci.ls_interval(4)
    a, b, e = (TS.generator(ci.LS_SPACE, g, 4) for g in "abe")
    de = d.values["e"]
    assert de.weight_part(1) == b - a
    assert de.weight_part(2) == ci.graded_bracket(e, a + b).scale(Fraction(1, 2))
    assert d.values["a"] == ci.graded_bracket(a, a).scale(Fraction(-1, 2))


def test_interval_leibniz_on_a_bracket():
    N = 4
    d = ci.ls_interval(N)
    a, e = (TS.generator(ci.LS_SPACE, g, N) for g in "ae")
    lhs = d(ci.graded_bracket(a, e))
    rhs = ci.graded_bracket(d(a), e) - ci.graded_bracket(a, d(e))
    assert lhs == rhs
    assert d(a * e - e * a) == d(a * e) - d(e * a)


@pytest.mark.parametrize("N", [1, 2, 3, 5, 8])
def test_interval_squares_to_zero(N):
    assert ci.check_square_zero(ci.ls_interval(N))["holds"]


def test_interval_values_are_lie():
    assert all(not v for v in ci.ls_interval(8).lie_certificate().values())


def test_mutated_bernoulli_numbers_break_the_interval():
    b1_plus = lambda n: Fraction(1, 2) if n == 1 else bernoulli(n)
    res = ci.check_square_zero(ci.ls_interval(6, b1_plus))
    assert not res["holds"] and res["first_failing_weight"] == 2
    bad_b2 = lambda n: Fraction(1, 3) if n == 2 else bernoulli(n)
    res = ci.check_square_zero(ci.ls_interval(6, bad_b2))
    assert not res["holds"] and res["first_failing_weight"] == 3


def test_flatness():
    d = ci.ls_interval(6)
    a, b = (TS.generator(ci.LS_SPACE, g, 6) for g in "ab")
    assert ci.is_flat(a, d)["holds"] and ci.is_flat(b, d)["holds"]
    assert ci.is_flat(TS.zero(ci.LS_SPACE, 6), d)["holds"]
    assert not ci.is_flat(a + b, d)["holds"]
    with pytest.raises(PreconditionError):
        ci.is_flat(a + ci.graded_bracket(a, a), d)


def test_flow():
    N = 8
    d = ci.ls_interval(N)
    a, b, e = (TS.generator(ci.LS_SPACE, g, N) for g in "abe")
    zero = TS.zero(ci.LS_SPACE, N)
    assert ci.flow(zero, a, 3, d) == a
    assert ci.flow(e, a, 0, d) == a
    assert ci.flow(e, a, 1, d) == b
    half = ci.flow(e, a, Fraction(1, 2), d)
    assert ci.is_flat(half, d)["holds"]
    assert ci.flow(e, half, Fraction(1, 2), d) == b


def test_interval_rejects_weight_zero():
    with pytest.raises(PreconditionError):
        ci.ls_interval(0)


# Quillen construction ---------------------------------------------------------------

def test_quillen_of_zero_structure():
    C = ci.Coalgebra([("w", 0), ("x", 1)])
    d = ci.quillen_construction(C, 4)
    assert all(v.is_zero() for v in d.values.values())


def test_quillen_sphere():
    d = ci.quillen_construction(quillen_samples()["sphere"], 6)
    L = d.space
    w, s = TS.generator(L, "w", 6), TS.generator(L, "s", 6)
    assert d.values["s"] == ci.graded_bracket(w, s)
    assert ci.check_square_zero(d)["holds"]


@pytest.mark.parametrize("name", ["point", "sphere", "circle"])
def test_quillen_samples_square_to_zero(name):
    assert ci.check_square_zero(ci.quillen_construction(quillen_samples()[name], 6))["holds"]


def test_quillen_rejects_non_cocommutative_input():
    C = ci.Coalgebra([("w", 0), ("x", 1)], {}, {"x": {("w", "x"): 1, ("x", "w"): 1}})
    assert C.is_cocommutative()
    C = ci.Coalgebra([("w", 0), ("v", 0)], {}, {"w": {("w", "v"): 1}})
    with pytest.raises(PreconditionError):
        ci.quillen_construction(C)


def test_non_coassociative_triangle_fails():
    edges = [("v0", 0), ("v1", 0), ("v2", 0), ("e01", 1), ("e12", 1), ("e02", 1)]
    bd = {"e01": {"v1": 1, "v0": -1}, "e12": {"v2": 1, "v1": -1}, "e02": {"v2": 1, "v0": -1}}
    cop = {f"v{i}": {(f"v{i}", f"v{i}"): 1} for i in range(3)}
    for e in ("e01", "e12", "e02"):
        i, j = e[1], e[2]
        cop[e] = {(f"v{i}", e): 1, (e, f"v{j}"): 1}
    C = ci.Coalgebra(edges, bd, cop).symmetrized()
    assert C.is_cocommutative() and not C.is_coassociative()
    res = ci.check_square_zero(ci.quillen_construction(C, 4))
    assert res["first_failing_weight"] == 3


# C-infinity data --------------------------------------------------------------------

def test_interval_coproducts_as_listed():
    A = ci.ls_cinfty_data(6)
    assert A.component(1, "c") == {("y",): 1, ("z",): -1}
    h = Fraction(-1, 2)
    assert A.component(2, "c") == {("c", "y"): h, ("y", "c"): h, ("c", "z"): h, ("z", "c"): h}
    assert A.component(2, "y") == {("y", "y"): -1}
    assert A.component(2, "z") == {("z", "z"): -1}
    assert A.component(3, "c")[("c", "y", "c")] == Fraction(1, 6)
    assert A.component(4, "c") == {}


@pytest.mark.parametrize("i", range(1, 7))
def test_ainfinity_relation(i):
    assert ci.ainf_relation_check(ci.ls_cinfty_data(6), i).holds


@pytest.mark.parametrize("k", range(1, 7))
def test_shuffle_condition(k):
    assert ci.cinf_shuffle_check(ci.ls_cinfty_data(6), k).holds


def test_relation_index_guard():
    with pytest.raises(PreconditionError):
        ci.ainf_relation_check(ci.ls_cinfty_data(3), 4)


def test_shuffle_detects_non_symmetric_data():
    sp = ci.GradedSpace([("c", 1), ("y", 0)])
    A = ci.AInftyData(sp, {2: {"c": {("c", "y"): 1}}}, 2)
    assert not ci.cinf_shuffle_check(A, 2).holds


def test_zero_structure():
    sp = ci.GradedSpace([("c", 1)])
    A = ci.AInftyData(sp, {}, 4)
    assert all(ci.ainf_relation_check(A, i).holds for i in range(1, 5))
    assert all(ci.cinf_shuffle_check(A, k).holds for k in range(1, 5))
    assert ci.ainf_codiff_correspondence(A) == ci.AInftyData(sp.shifted(-1), {}, 4, "codifferential")


def test_correspondence_round_trip_and_first_component():
    A = ci.ls_cinfty_data(6)
    D = ci.ainf_codiff_correspondence(A)
    assert D.kind == "codifferential"
    assert D.component(1, "c") == {("y",): 1, ("z",): -1}
    assert ci.ainf_codiff_correspondence(D, "to_coproducts") == A


def test_codifferential_squares_to_zero():
    D = ci.ainf_codiff_correspondence(ci.ls_cinfty_data(6))
    d = ci.codifferential_derivation(D)
    assert ci.check_square_zero(d)["holds"]
    assert all(not v for v in d.lie_certificate().values())
