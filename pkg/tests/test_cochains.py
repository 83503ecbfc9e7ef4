import random

import pytest

from cellcoalg import cochains as co
from cellcoalg.cochains import Cochain, PreconditionError
from cellcoalg.cubical import periodic_grid
from cellcoalg.io import complex_from_document, load_sample
from cellcoalg.scalars import F2, QQ, ZZ, prime_field
from cellcoalg.simplicial import SimplicialComplex

F3 = prime_field(3)


@pytest.fixture(scope="module")
def rp2():
    return load_sample("rp2")


def test_circle_integral():
    H = co.cohomology(SimplicialComplex([[0, 1], [1, 2], [0, 2]]), ZZ)
    assert H.ranks == [1, 1]


def test_rp2_integral_and_mod2(rp2):
    HZ = co.cohomology(rp2, ZZ)
    assert HZ.ranks == [1, 0, 0]
    assert [list(t) for t in HZ.torsion] == [[], [], [2]]
    assert co.cohomology(rp2, F2).dims == [1, 1, 1]
    assert co.cohomology(rp2, QQ).dims == [1, 0, 0]


def test_known_cohomology_of_samples():
    assert co.cohomology(load_sample("torus7"), F2).dims == [1, 2, 1]
    assert co.cohomology(load_sample("sphere2"), ZZ).ranks == [1, 0, 1]
    HZ = co.cohomology(load_sample("moore3"), ZZ)
    assert [list(t) for t in HZ.torsion] == [[], [], [3]]
    assert co.cohomology(load_sample("cp2"), ZZ).ranks == [1, 0, 1, 0, 1]


def test_representatives_are_cocycles_and_coboundaries_vanish(rp2):
    rng = random.Random(0)
    for ring in (ZZ, F2, F3):
        H = co.cohomology(rp2, ring)
        for d in range(3):
            for a in H.representatives(d):
                assert H.is_cocycle(a)
            b = co.random_coboundary(rp2, d, ring, rng)
            assert all(x == 0 for x in H.coordinates(b))


def test_cup_square_on_rp2(rp2):
    H = co.cohomology(rp2, F2)
    a = H.representatives(1)[0]
    assert co._coords(H, co.cup_product(a, a)) == (1,)


def test_unit_is_neutral(rp2):
    H = co.cohomology(rp2, F2)
    b = H.representatives(1)[0]
    assert co.cup_product(Cochain.unit(rp2, F2), b) == b


def test_cup_degree_overflow():
    circle = SimplicialComplex([[0, 1], [1, 2], [0, 2]])
    H = co.cohomology(circle, F2)
    a = H.representatives(1)[0]
    assert co._coords(H, co.cup_product(a, a)) == ()


def test_cup_ring_mismatch(rp2):
    with pytest.raises(PreconditionError):
        co.cup_product(Cochain.unit(rp2, F2), Cochain.unit(rp2, F3))


def test_leibniz_rule_for_cochains(rp2):
    rng = random.Random(5)
    for _ in range(5):
        a = Cochain(rp2, 0, [rng.randint(-2, 2) for _ in rp2.cells(0)], ZZ)
        b = Cochain(rp2, 1, [rng.randint(-2, 2) for _ in rp2.cells(1)], ZZ)
        lhs = co.coboundary(co.cup_product(a, b))
        rhs = co.cup_product(co.coboundary(a), b) + co.cup_product(a, co.coboundary(b))
        assert lhs == rhs
        c = Cochain(rp2, 1, [rng.randint(-2, 2) for _ in rp2.cells(1)], ZZ)
        lhs = co.coboundary(co.cup_product(b, c))
        rhs = co.cup_product(co.coboundary(b), c) - co.cup_product(b, co.coboundary(c))
        assert lhs == rhs


def test_squares_on_rp2(rp2):
    H = co.cohomology(rp2, F2)
    a = H.representatives(1)[0]
    assert co.sq(H, 1, a) == (1,)
    assert co.sq(H, 0, a) == (1,)
    assert co.sq(H, 2, a) == ()
    assert co.sq_matrix(H, 1, 1) == [[1]]


def test_sq1_vanishes_on_circle():
    H = co.cohomology(load_sample("circle"), F2)
    a = H.representatives(1)[0]
    assert co.steenrod_square(1, a).is_zero()


def test_sq2_on_cp2_is_an_isomorphism():
    H = co.cohomology(load_sample("cp2"), F2)
    assert co.sq_matrix(H, 2, 2) == [[1]]


def test_squares_need_f2(rp2):
    with pytest.raises(PreconditionError):
        co.steenrod_square(1, Cochain.unit(rp2, F3))


def test_sq_well_defined(rp2):
    H = co.cohomology(rp2, F2)
    rng = random.Random(2)
    for d in range(3):
        for a in H.representatives(d):
            for k in range(3):
                base = co.sq(H, k, a)
                for _ in range(5):
                    assert co.sq(H, k, a + co.random_coboundary(rp2, d, F2, rng)) == base


def test_sq1_matches_integral_bockstein():
    for name in ("rp2", "moore3", "torus7", "sphere2"):
        cx = load_sample(name)
        HZ, H2 = co.cohomology(cx, ZZ), co.cohomology(cx, F2)
        for d in range(cx.dimension):
            assert co.rank_of(co.sq_matrix(H2, 1, d), 2) == co.integral_bockstein_rank(HZ, d, 2)


def test_odd_prime_operations_on_moore_space():
    H = co.cohomology(load_sample("moore3"), F3)
    u = H.representatives(0)[0]
    assert co.p_operation(H, 3, 0, 0, u) == H.coordinates(u)
    a = H.representatives(1)[0]
    assert co.p_operation(H, 3, 0, 1, a) in {(1,), (2,)}
    assert not any(co.p_operation(H, 3, -1, 0, a))
    assert co.p_operation(H, 3, 1, 0, a) == ()


def test_bockstein_vanishes_without_torsion():
    H = co.cohomology(load_sample("torus7"), F3)
    for a in H.representatives(2):
        assert co.p_operation(H, 3, 1, 1, a) == ()
    for a in H.representatives(1):
        assert not any(co.p_operation(H, 3, 0, 1, a))


def test_p0_scalars_at_three():
    from cellcoalg.simplicial import SIMPLEX_MODEL
    assert [co.p0_scalar(SIMPLEX_MODEL, 3, q) for q in range(4)] == [1, 2, 2, 1]


def test_odd_prime_preconditions(rp2):
    H = co.cohomology(rp2, F2)
    a = H.representatives(1)[0]
    with pytest.raises(PreconditionError):
        co.power_operation(2, 0, 0, a)
    with pytest.raises(PreconditionError):
        co.power_operation(3, 0, 0, a)


def test_binomial_conventions():
    assert co.binomial(-1, 0) == 0 and co.binomial(3, 4) == 0 and co.binomial(4, 2) == 6


def test_adem_terms():
    assert co.adem_terms(2, 1, 1) == []
    assert co.adem_terms(2, 1, 2) == [(1, 3, 0)]
    assert co.adem_terms(2, 2, 2) == [(1, 3, 1)]
    with pytest.raises(PreconditionError):
        co.adem_terms(2, 2, 1)
    with pytest.raises(PreconditionError):
        co.adem_terms(3, 3, 1)


def test_cartan_examples(rp2):
    H = co.cohomology(rp2, F2)
    a = H.representatives(1)[0]
    u = Cochain.unit(rp2, F2)
    assert co.verify_cartan(H, 1, a, a).holds
    assert co.verify_cartan(H, 1, a, u).holds
    assert co.verify_cartan(H, 5, a, a).holds
    assert co.verify_adem(H, 1, 1, a).holds


@pytest.mark.parametrize("name", ["circle", "sphere2", "rp2", "torus7", "moore3"])
def test_relation_reports(name):
    for p in (2, 3):
        H = co.cohomology(load_sample(name), prime_field(p))
        assert co.cartan_report(H).holds
        assert co.adem_report(H).holds


def test_cubical_torus_operations():
    cx = complex_from_document(periodic_grid([2, 2]))
    H = co.cohomology(cx, F2)
    assert H.dims == [1, 2, 1]
    x, y = H.representatives(1)
    assert co._coords(H, co.cup_product(x, y)) == (1,)
    assert co.sq(H, 1, x) == (0,)
