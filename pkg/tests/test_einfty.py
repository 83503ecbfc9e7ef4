import pytest

from cellcoalg import einfty as E
from cellcoalg.cubical import CUBE_MODEL
from cellcoalg.free import Element
from cellcoalg.simplicial import SIMPLEX_MODEL, simplex

S = SIMPLEX_MODEL


def same(a, b, model=S, n_max=3):
    return all(not E.difference_on(a, b, model.cells(n)) for n in range(n_max + 1))


def test_incl_of_generators():
    ident, eps, delta = E.identity_op(S), E.counit_op(S), E.coproduct_op(S)
    assert same(E.incl(ident), delta)
    assert same(E.incl(eps), ident)
    assert same(E.incl(delta), E.iterated_coproduct_op(S, 2))


def test_proj_of_generators():
    ident, eps, delta = E.identity_op(S), E.counit_op(S), E.coproduct_op(S)
    assert same(E.proj(delta), ident)
    assert same(E.proj(ident), eps)
    with pytest.raises(ValueError):
        E.proj(eps)


@pytest.mark.parametrize("model", [S, CUBE_MODEL])
def test_proj_after_incl_is_identity(model):
    for eta in (E.psi(model, 2, 1), E.psi(model, 3, 2), E.coproduct_op(model)):
        assert same(E.proj(E.incl(eta)), eta, model)


def test_sigma_of_identity_on_interval():
    s = E.sigma(E.identity_op(S))
    assert s.on_cell((0,)) == {}
    assert s.on_cell((0, 1)) == {}
    with pytest.raises(ValueError):
        E.sigma(E.counit_op(S))


@pytest.mark.parametrize("model", [S, CUBE_MODEL])
def test_boundary_of_sigma(model):
    # with the fixed sign conventions d(sigma eta) + sigma(d eta) = eta - incl proj eta
    for eta in (E.identity_op(model), E.coproduct_op(model), E.psi(model, 2, 1)):
        lhs = E.combination([(1, E.boundary_op(E.sigma(eta))),
                             (1, E.sigma(E.boundary_op(eta)))])
        rhs = E.combination([(1, eta), (-1, E.incl(E.proj(eta)))])
        assert same(lhs, rhs, model, 3)


def test_h_in_arity_one_is_sigma():
    ident = E.identity_op(S)
    assert same(E.contraction_h(ident), E.sigma(ident))


def test_h_top_index_guard():
    with pytest.raises(ValueError):
        E.contraction_h(E.coproduct_op(S), top_index=2)


@pytest.mark.parametrize("r", [2, 3])
def test_contraction_identity(r):
    def tower(eta):
        for _ in range(r):
            eta = E.proj(eta)
        for _ in range(r):
            eta = E.incl(eta)
        return eta
    for eta in (E.iterated_coproduct_op(S, r - 1), E.psi(S, r, 1), E.psi(S, r, 2)):
        lhs = E.combination([(1, E.boundary_op(E.contraction_h(eta))),
                             (1, E.contraction_h(E.boundary_op(eta)))])
        rhs = E.combination([(1, eta), (-1, tower(eta))])
        assert same(lhs, rhs, S, 3)


def test_contraction_on_vertex_example():
    delta = E.coproduct_op(S)
    assert E.boundary_op(E.contraction_h(delta)).on_cell((0,)) == {}


def test_psi_examples():
    assert E.psi_value(S, 2, 1, (0, 1)) == Element({((0, 1), (0, 1)): 1})
    assert E.psi_value(S, 2, 1, (0,)).is_zero()
    assert same(E.psi(S, 4, 0), E.iterated_coproduct_op(S, 3))
    assert E.psi(S, 2, -1).top(3) == {}
    with pytest.raises(ValueError):
        E.psi(S, 1, 0)


def test_cup_i_classic_examples():
    assert E.cup_i_classic(0, simplex(0, 1, 2)) == Element(
        {((0,), (0, 1, 2)): 1, ((0, 1), (1, 2)): 1, ((0, 1, 2), (2,)): 1})
    assert E.cup_i_classic(1, simplex(0, 1)) == Element({((0, 1), (0, 1)): 1})
    assert E.cup_i_classic(2, simplex(0, 1)).is_zero()


def test_psi_degrees():
    for i in range(4):
        op = E.psi(S, 3, i)
        for lab in op.top(3):
            assert sum(len(c) - 1 for c in lab) == 3 + i


def test_locality_against_direct_evaluation():
    # the classic recursion is evaluated directly on the face, psi through
    # the face inclusion of the standard simplex
    for i in range(3):
        cl = E.classic_map(S, i)
        for face in [(1, 3), (0, 2, 3), (1, 2, 3), (2,)]:
            direct = {k: v for k, v in cl.raw((face,)).items() if v}
            assert E.psi(S, 2, i).on_cell(face) == direct


@pytest.mark.parametrize("r", [2, 3, 5])
def test_boundary_identities_small(r):
    assert not E.psi_identity_failures(S, r, 3, 3)
    assert not E.psi_identity_failures(CUBE_MODEL, r, 2, 2)


def test_cyclic_symbols():
    a = E.psi(S, 3, 0)
    total = E.combination([(1, E.N(a)), (-1, E.act((0, 1, 2), a)),
                           (-1, E.act((1, 2, 0), a)), (-1, E.act((2, 0, 1), a))])
    assert total.top(2) == {}
    with pytest.raises(ValueError):
        E.act((1, 0), a)
