import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbisect import models
from orbisect.eqgeom.simplicial import (
    INTERIOR,
    MIRROR,
    ON_BOUNDARY,
    NotRegularError,
    SimplicialAction,
    SimplicialComplex,
    barycentric_subdivision,
    connected_components,
    double,
    euler_characteristic,
    fixed_subcomplex,
    is_regular,
    join,
    quotient_complex,
    regularize,
)
from orbisect.fingroup import generated, group_from_generators, perm_from_cycles

from . import oracles
from .strategies import invariant_complexes


def _perms(A):
    return [tuple(int(v) for v in row) for row in A.images]


def test_euler_characteristics_of_models():
    assert models.torus_grid().euler_characteristic() == 0
    assert models.octahedron().euler_characteristic() == 2
    assert models.tetrahedron_boundary().euler_characteristic() == 2
    assert models.square_circle().euler_characteristic() == 0
    assert models.cone_disk().euler_characteristic() == 1
    assert models.annulus().euler_characteristic() == 0
    assert models.interval().euler_characteristic() == 1
    assert models.octahedron().f_vector == (6, 12, 8)


def test_from_maximal_validation():
    with pytest.raises(ValueError):
        SimplicialComplex.from_maximal(3, [[0, 3]])
    with pytest.raises(ValueError):
        SimplicialComplex.from_maximal(3, [[0, 1]], boundary=[[1, 2]])
    K = SimplicialComplex.from_maximal(3, [[0, 1, 2]], boundary=[[0, 1], [1, 2], [0, 2]])
    assert K.has_boundary and len(K.boundary) == 6
    assert K.without_boundary().boundary is None


def test_action_validation():
    K = models.square_circle()
    G = group_from_generators([perm_from_cycles([[1, 2]], 4)])
    with pytest.raises(ValueError):
        SimplicialAction.from_generators(K, G, [[1, 0, 2, 3]])  # edge {1,2} goes to {0,2}
    with pytest.raises(ValueError):
        SimplicialAction.from_generators(K, G, [[0, 0, 2, 3]])
    Z3 = group_from_generators([perm_from_cycles([[1, 2, 3]], 3)])
    with pytest.raises(ValueError):
        # an involution of the square cannot represent an element of order 3
        SimplicialAction.from_generators(K, Z3, [[2, 1, 0, 3]])
    I = models.interval()
    Z2 = group_from_generators([perm_from_cycles([[1, 2]], 2)])
    marked = SimplicialComplex.from_maximal(3, [[0, 1], [1, 2]], boundary=[[0]])
    with pytest.raises(ValueError, match="boundary"):
        SimplicialAction.from_generators(marked, Z2, [[2, 1, 0]])
    with pytest.raises(ValueError, match="no boundary"):
        octa = models.octahedron()
        double(octa, SimplicialAction.trivial(octa, Z2))
    assert I.has_boundary


@given(invariant_complexes())
def test_euler_matches_oracle(data):
    K, A, gens, _ = data
    assert euler_characteristic(K) == oracles.euler(K.simplices)
    assert set(K.simplices) == oracles.closure(K.simplices)


@given(invariant_complexes())
def test_subdivision_preserves_euler_and_counts(data):
    K, A, _, _ = data
    sd = barycentric_subdivision(K, A)
    assert sd.complex.vertex_count == len(K)
    assert sd.complex.euler_characteristic() == K.euler_characteristic()
    for v in range(len(K)):
        assert sd.carrier(v) == K.simplices[v]


@given(invariant_complexes())
def test_regularization_is_regular(data):
    K, A, _, _ = data
    reg = regularize(K, A)
    assert reg.passes in (0, 2)
    assert (reg.passes == 0) == is_regular(A)
    perms = _perms(reg.action)
    simp = reg.complex.simplices
    for g in perms:
        assert oracles.setwise_fixed(simp, [g]) == oracles.pointwise_fixed(simp, [g])


@given(invariant_complexes())
def test_fixed_subcomplexes_match_oracle(data):
    K, A, _, _ = data
    Kr, Ar = regularize(K, A)
    perms = _perms(Ar)
    G = Ar.group
    for g in range(G.order):
        H = generated(G, [g])
        F = fixed_subcomplex(Kr, Ar, H)
        assert set(F.simplices) == oracles.pointwise_fixed(Kr.simplices, [perms[h] for h in H.members])


@given(invariant_complexes())
def test_burnside_for_quotient(data):
    K, A, _, _ = data
    Kr, Ar = regularize(K, A)
    G = Ar.group
    Q = quotient_complex(Kr, Ar)
    assert Q.euler_characteristic() == oracles.quotient_euler(Kr.simplices, _perms(Ar))
    total = sum(fixed_subcomplex(Kr, Ar, [g]).euler_characteristic() for g in range(G.order))
    assert total == G.order * Q.euler_characteristic()


@given(invariant_complexes(max_vertices=5))
def test_extra_subdivision_keeps_fixed_and_quotient_euler(data):
    K, A, _, _ = data
    Kr, Ar = regularize(K, A)
    sd = barycentric_subdivision(Kr, Ar)
    G = Ar.group
    for g in range(G.order):
        a = fixed_subcomplex(Kr, Ar, [g]).euler_characteristic()
        b = fixed_subcomplex(sd.complex, sd.action, [g]).euler_characteristic()
        assert a == b
    assert quotient_complex(Kr, Ar).euler_characteristic() == quotient_complex(sd.complex, sd.action).euler_characteristic()


@given(invariant_complexes())
def test_components_match_oracle(data):
    K, _, _, _ = data
    mine = [set(c.vertices) for c in connected_components(K)]
    assert mine == oracles.components(K.simplices)


@given(invariant_complexes(max_vertices=4), invariant_complexes(max_vertices=4))
def test_join_f_vector(a, b):
    K1, K2 = a[0], b[0]
    J = join(K1, K2)
    p = np.polynomial.polynomial.polymul([1, *K1.f_vector], [1, *K2.f_vector])
    assert tuple(int(x) for x in p[1:]) == J.f_vector
    # chi(K1 * K2) = chi(K1) + chi(K2) - chi(K1) chi(K2)
    c1, c2 = K1.euler_characteristic(), K2.euler_characteristic()
    assert J.euler_characteristic() == c1 + c2 - c1 * c2


@given(invariant_complexes(), st.data())
def test_double_euler_formula(data, draw):
    K, A, gens, _ = data
    faces = sorted(K.simplices)
    seeds = draw.draw(st.lists(st.sampled_from(faces), min_size=0, max_size=2))
    bd = sorted(oracles.orbit_closure(gens, seeds)) if seeds else []
    Kb = SimplicialComplex.from_maximal(K.vertex_count, K.simplices, boundary=bd)
    Ab = SimplicialAction.from_generators(Kb, A.group, gens)
    D = double(Kb, Ab)
    assert not D.complex.has_boundary
    assert D.complex.euler_characteristic() == 2 * K.euler_characteristic() - oracles.euler(bd)
    assert set(np.unique(D.side)) <= {INTERIOR, MIRROR, ON_BOUNDARY}
    orig = [D.complex.simplices[i] for i in D.original_ids]
    # the original copy is a subdivision of K
    assert oracles.euler(orig) == K.euler_characteristic()


def test_double_of_models():
    for spec in (models.disk_z4(), models.trivial_interval(), models.trivial_annulus(), models.trivial_triangle()):
        K, A = spec.regularization
        D = double(K, A)
        chi_bd = K.boundary_complex().euler_characteristic()
        assert D.complex.euler_characteristic() == 2 * K.euler_characteristic() - chi_bd
    K, A = models.disk_z4().regularization
    assert double(K, A).complex.euler_characteristic() == 2


def test_irregular_action_is_rejected_before_regularization():
    spec = models.octahedron_z2_edge()
    assert not is_regular(spec.action)
    with pytest.raises(NotRegularError):
        fixed_subcomplex(spec.complex, spec.action, [1])
    with pytest.raises(NotRegularError):
        quotient_complex(spec.complex, spec.action)
    reg = spec.regularization
    assert reg.passes == 2 and is_regular(reg.action)


def test_regularization_lift_and_carrier():
    spec = models.octahedron_z2_edge()
    reg = spec.regularization
    L = [(0,), (2,), (0, 2)]
    lifted = reg.lift(L)
    assert oracles.euler(lifted) == 1
    for v in range(reg.complex.vertex_count):
        c = reg.carrier(v)
        assert c in spec.complex


def test_quotient_complex_when_faithful():
    K, A = models.pillowcase().regularization
    Q = quotient_complex(K, A)
    assert Q.euler_characteristic() == 2
    if Q.complex is not None:
        assert Q.complex.euler_characteristic() == 2
