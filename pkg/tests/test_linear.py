from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbisect import models
from orbisect.eqgeom.linear import (
    RationalRep,
    codim_violations,
    fixed_subspace,
    is_invariant,
    isotropy_groups,
    pointwise_stabilizer,
    span,
    sphere_sector_geometry,
    subspace_leq,
    transform,
)
from orbisect.eqgeom.simplicial import connected_components, fixed_subcomplex
from orbisect.fingroup import all_subgroups, centralizer, group_from_generators, trivial, whole

from . import oracles
from .strategies import signed_perm_reps


@given(signed_perm_reps())
def test_fixed_dimension_matches_sympy(R):
    for H in all_subgroups(R.group):
        F = fixed_subspace(R, H)
        assert F.dim == oracles.sympy_fixed_dim([R(h) for h in H.members])
        for h in H.members:
            for v in F.basis:
                assert tuple(sum(a * b for a, b in zip(row, v)) for row in R(h)) == v


@given(signed_perm_reps())
def test_fixed_dimension_is_antitone(R):
    subs = all_subgroups(R.group)
    fixed = {H.members: fixed_subspace(R, H) for H in subs}
    for H in subs:
        for K in subs:
            if H <= K:
                assert fixed[K.members].dim <= fixed[H.members].dim
                assert subspace_leq(fixed[K.members], fixed[H.members])


@given(signed_perm_reps())
def test_centralizer_preserves_fixed_space(R):
    G = R.group
    for H in all_subgroups(G):
        F = fixed_subspace(R, H)
        C = centralizer(G, H.members)
        assert is_invariant(R, F, C)
        for c in C.members:
            assert transform(R, c, F) == F


@given(signed_perm_reps())
def test_isotropy_groups_are_stabilizers(R):
    isos = isotropy_groups(R)
    for S in isos:
        assert S.is_closed()
        F = fixed_subspace(R, S)
        assert F.dim >= 1
        assert pointwise_stabilizer(R, F).members == S.members


@given(signed_perm_reps())
def test_codim_violations_definition(R):
    bad = set(codim_violations(R))
    for g in range(R.group.order):
        d = oracles.sympy_fixed_dim([R(g)])
        expected = g not in R.kernel.members and R.dim - d < 2
        assert (g in bad) == expected


def test_sphere_geometry_cases():
    R = models.klein_plane_rep()
    G = R.group
    W = whole(G)
    # the x axis is fixed by the reflection in it; the other reflection negates it
    flip_y = next(g for g in range(G.order) if R(g) == ((1, 0), (0, -1)))
    axis = fixed_subspace(R, [flip_y])
    assert axis.dim == 1
    assert sphere_sector_geometry(R, axis, W).chi_numerators == (2,)
    assert sphere_sector_geometry(R, axis, trivial(G)).chi_numerators == (1, 1)
    plane = fixed_subspace(R, trivial(G))
    assert sphere_sector_geometry(R, plane, W) == sphere_sector_geometry(R, plane, trivial(G))
    assert sphere_sector_geometry(R, plane, W).chi_numerators == (0,)
    zero = fixed_subspace(R, W)
    assert sphere_sector_geometry(R, zero, W).components == 0
    R6 = models.d6_rep()
    S5 = fixed_subspace(R6, trivial(R6.group))
    assert sphere_sector_geometry(R6, S5, whole(R6.group)).chi_numerators == (0,)
    S2 = span(6, [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1], [1, 1, 1, 0, 0, 0]])
    assert sphere_sector_geometry(R6, S2, trivial(R6.group)).chi_numerators == (2,)


def test_sphere_geometry_rejects_non_invariant():
    R = models.klein_plane_rep()
    G = R.group
    diag = span(2, [[1, 1]])
    with pytest.raises(ValueError):
        sphere_sector_geometry(R, diag, whole(G))


def test_rep_validation():
    G = group_from_generators([[[0, -1], [1, 0]]])
    with pytest.raises(ValueError):
        RationalRep.from_generators(G, [[[-1, 0], [0, 1]], [[1, 0], [0, 1]]])
    with pytest.raises(ValueError):
        # order 2 matrix for an order 4 generator is fine, order 3 is not
        RationalRep.from_generators(G, [[[0, -1], [1, -1]]])
    with pytest.raises(ValueError):
        RationalRep.from_generators(G, [[[1, 1], [1, 1]]])
    R = RationalRep.from_generators(G, [[[-1, 0], [0, -1]]])
    assert R.kernel.order == 2 and not R.is_faithful()


@pytest.mark.parametrize(
    "sphere, triangulated",
    [(models.z4_sphere, models.octahedron_z4), (models.d6_sphere, models.d6_join_model)],
    ids=["z4", "d6"],
)
def test_backend_agreement_on_fixed_sets(sphere, triangulated):
    R = sphere().rep
    K, A = triangulated().regularization
    GA = A.group
    assert GA.order == R.group.order
    # both groups are built from the same generator order, so subgroups correspond by id
    for H in all_subgroups(R.group):
        F = fixed_subspace(R, H)
        geo = sphere_sector_geometry(R, F, trivial(R.group))
        fixed = fixed_subcomplex(K, A, _match(H, R.group, GA))
        comps = connected_components(fixed)
        assert len(comps) == geo.components
        assert sorted(c.euler_characteristic() for c in comps) == sorted(geo.chi_numerators)
        if comps:
            assert max(c.dim for c in comps) == geo.dim


def _match(H, GR, GA):
    """Carry element ids of ``GR`` to ``GA`` through words in matching generators."""
    words = {GR.identity: GA.identity}
    frontier = [GR.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for gr, ga in zip(GR.generator_ids, GA.generator_ids):
                y = GR.mul(x, gr)
                if y not in words:
                    words[y] = GA.mul(words[x], ga)
                    nxt.append(y)
        frontier = nxt
    return [words[h] for h in H.members]
