from itertools import combinations

import pytest

from cellcoalg import identities
from cellcoalg import cochains as co
from cellcoalg import simplicial as S
from cellcoalg.free import Element, tensor_elements
from cellcoalg.io import load_sample
from cellcoalg.scalars import QQ, ZZ
from cellcoalg.simplicial import SIMPLEX_MODEL, SimplicialComplex, simplex


def test_boundary_examples():
    assert S.boundary(simplex(0, 1)) == simplex(1) - simplex(0)
    assert S.boundary(simplex(0, 1, 2)) == simplex(1, 2) - simplex(0, 2) + simplex(0, 1)
    assert S.boundary(S.boundary(simplex(0, 1, 2, 3))).is_zero()


def test_alexander_whitney_examples():
    v = simplex
    assert S.aw_coproduct(v(0)) == tensor_elements(v(0), v(0))
    assert S.aw_coproduct(v(0, 1)) == tensor_elements(v(0), v(0, 1)) + tensor_elements(v(0, 1), v(1))
    assert S.aw_coproduct(v(0, 1, 2)) == (tensor_elements(v(0), v(0, 1, 2))
                                          + tensor_elements(v(0, 1), v(1, 2))
                                          + tensor_elements(v(0, 1, 2), v(2)))


def test_augmentation():
    assert S.augmentation(simplex(0)) == 1
    assert S.augmentation(simplex(0, 1)) == 0
    assert S.augmentation(simplex(0).scale(2) - simplex(1).scale(3)) == -1


def test_join_examples():
    v = simplex
    assert S.join(tensor_elements(v(0), v(1, 2))) == v(0, 1, 2)
    assert S.join(tensor_elements(v(0), v(0, 1))).is_zero()
    assert S.join(tensor_elements(v(0, 1), v(2))) == -v(0, 1, 2)
    assert S.join(tensor_elements(v(1), v(0))) == -v(0, 1)


def test_iterated_coproduct():
    v = simplex
    assert S.iterated_coproduct(1, v(0, 1)) == S.aw_coproduct(v(0, 1))
    assert S.iterated_coproduct(2, v(0)) == tensor_elements(v(0), v(0), v(0))
    assert S.iterated_coproduct(2, v(0, 1)) == (tensor_elements(v(0), v(0), v(0, 1))
                                                + tensor_elements(v(0), v(0, 1), v(1))
                                                + tensor_elements(v(0, 1), v(1), v(1)))
    with pytest.raises(ValueError):
        S.iterated_coproduct(0, v(0))


@pytest.mark.parametrize("check", [identities.coassociativity, identities.counit,
                                   identities.coproduct_chain_map])
def test_coalgebra_identities(check):
    assert check(SIMPLEX_MODEL, 4).holds


def test_join_identities():
    assert identities.join_homotopy(SIMPLEX_MODEL, 3).holds
    assert identities.join_counit(SIMPLEX_MODEL, 3).holds


def test_faces_of_standard_simplex():
    cells = SIMPLEX_MODEL.cells(3)
    assert len(cells) == 2 ** 4 - 1
    assert SIMPLEX_MODEL.top(3) == (0, 1, 2, 3)


def test_complex_validation():
    with pytest.raises(ValueError):
        SimplicialComplex([[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        SimplicialComplex([[1, 0]])
    with pytest.raises(ValueError):
        SimplicialComplex([])


def test_complex_faces_and_euler():
    circle = SimplicialComplex([[0, 1], [1, 2], [0, 2]])
    assert circle.f_vector() == [3, 3]
    assert circle.euler_characteristic() == 0
    assert load_sample("rp2").euler_characteristic() == 1
    assert load_sample("torus7").f_vector() == [7, 21, 14]


def test_cp2_vertex_links_are_homology_spheres():
    cx = load_sample("cp2")
    assert cx.f_vector()[0] == 9
    assert len(cx.cells(2)) == len(list(combinations(range(9), 3)))
    for v in cx.vertices:
        link = [tuple(x for x in f if x != v) for f in cx.facets if v in f]
        H = co.cohomology(SimplicialComplex(link), ZZ)
        assert H.ranks == [1, 0, 0, 1]
        assert all(not t for t in H.torsion)


def test_coefficients_in_q():
    x = Element({((0, 1),): "1/2"}, QQ)
    assert S.boundary(x).coefficient(((1,),)) == QQ.parse("1/2")
