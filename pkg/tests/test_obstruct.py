from fractions import Fraction

import pytest
from hypothesis import given, settings

from orbisect import models
from orbisect.eqgeom.simplicial import SimplicialAction, SimplicialComplex, connected_components
from orbisect.fingroup import GammaPresentation, group_from_generators
from orbisect.obstruct import (
    EXIT_CODES,
    Status,
    Verdict,
    auto_gamma,
    isotropy_groups,
    verdict,
    verdict_closed,
    verdict_open,
    verdict_with_boundary,
)
from orbisect.sectors import OrbifoldSpec

from .strategies import invariant_complexes

F0, F1, F2 = (GammaPresentation.free(d) for d in range(3))
GAMMAS = [F0, F1, F2, GammaPresentation.cyclic(2), GammaPresentation(2, ((1, 2, -1, -2),))]
REGRESSION = models.regression_specs()


def test_exit_codes():
    assert {s.value: EXIT_CODES[s] for s in Status} == {
        "ADMITS": 0, "OBSTRUCTED": 2, "INCONCLUSIVE": 3, "HYPOTHESIS_VIOLATED": 4}
    assert Status.OBSTRUCTED.exit_code == 2


def test_verdict_invariants_enforced():
    with pytest.raises(ValueError):
        Verdict(Status.OBSTRUCTED, (), True, F1)
    with pytest.raises(ValueError):
        Verdict(Status.ADMITS, (), False, F1)
    with pytest.raises(ValueError):
        Verdict(Status.ADMITS, (0,), True, F1)
    with pytest.raises(ValueError):
        Verdict(Status.INCONCLUSIVE, (), True, F1)
    Verdict(Status.HYPOTHESIS_VIOLATED, (), True, F1, raw_status=Status.ADMITS)


def test_auto_gamma_examples():
    assert auto_gamma(models.d6_sphere()) == F2
    assert auto_gamma(models.z4_sphere()) == F1
    assert auto_gamma(models.trivial_torus()) == F0
    assert auto_gamma(models.pillowcase()) == F1


def test_d6_verdict_flip():
    spec = models.d6_sphere()
    v1 = verdict_closed(spec, F1)
    assert v1.status is Status.INCONCLUSIVE and not v1.covers and v1.cover_witness.order == 6
    v2 = verdict_closed(spec, F2)
    assert v2.status is Status.OBSTRUCTED and v2.covers
    assert len(v2.witnesses) == 3
    assert all(v2.chi_es_values[i] == 2 and v2.table.sectors[i].dim == 2 for i in v2.witnesses)
    assert verdict_closed(spec).status is Status.OBSTRUCTED


def test_isotropy_groups_of_the_d6_sphere():
    orders = sorted(H.order for H in isotropy_groups(models.d6_sphere()))
    assert orders == [1, 2, 2, 2, 3, 6]


@pytest.mark.parametrize("name", sorted(REGRESSION))
def test_obstruction_for_any_gamma_persists_for_covering_gamma(name):
    spec = REGRESSION[name]
    auto = verdict_closed(spec)
    raw = auto.raw_status or auto.status
    assert raw is not Status.INCONCLUSIVE
    for gamma in GAMMAS:
        v = verdict_closed(spec, gamma)
        if (v.raw_status or v.status) is Status.OBSTRUCTED:
            assert raw is Status.OBSTRUCTED


@settings(max_examples=30)
@given(invariant_complexes(max_vertices=5))
def test_auto_gamma_is_never_inconclusive(data):
    K, A, _, _ = data
    spec = OrbifoldSpec.simplicial(K, A)
    auto = verdict_closed(spec)
    assert (auto.raw_status or auto.status) is not Status.INCONCLUSIVE
    for gamma in (F0, F1):
        if (verdict_closed(spec, gamma).raw_status or verdict_closed(spec, gamma).status) is Status.OBSTRUCTED:
            assert (auto.raw_status or auto.status) is Status.OBSTRUCTED


def test_hypothesis_violation_is_flagged():
    for name in ("octahedron_d6", "klein_on_circle"):
        v = verdict_closed(REGRESSION[name])
        assert v.status is Status.HYPOTHESIS_VIOLATED
        assert v.raw_status is not None and any("codimension" in n for n in v.notes)
    assert verdict_closed(REGRESSION["pillowcase"]).raw_status is None


def test_closed_verdict_examples():
    assert verdict_closed(models.trivial_torus()).status is Status.ADMITS
    assert verdict_closed(models.trivial_sphere()).status is Status.OBSTRUCTED
    pc = verdict_closed(models.pillowcase())
    assert pc.status is Status.OBSTRUCTED
    assert sorted(pc.chi_es_values[i] for i in pc.witnesses) == [Fraction(1, 2)] * 4
    assert verdict_closed(models.z4_sphere()).status is Status.OBSTRUCTED
    assert verdict_closed(models.octahedron_antipodal()).status is Status.OBSTRUCTED


def test_wrong_entry_points_raise():
    with pytest.raises(ValueError):
        verdict_closed(models.disk_z4())
    with pytest.raises(ValueError):
        verdict_with_boundary(models.trivial_torus())
    base, _ = models.bundle_z6_reps()
    with pytest.raises(ValueError):
        verdict_closed(OrbifoldSpec.affine(base))
    with pytest.raises(ValueError):
        verdict_open(models.d6_sphere(), [])
    assert verdict(models.disk_z4()).status is Status.OBSTRUCTED


# manifolds ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "K, chi",
    [
        (models.torus_grid(), 0),
        (models.torus_grid(3), 0),
        (models.octahedron(), 2),
        (models.tetrahedron_boundary(), 2),
        (models.square_circle(), 0),
    ],
)
def test_trivial_group_admits_iff_euler_vanishes(K, chi):
    assert K.euler_characteristic() == chi
    v = verdict_closed(models.trivial_on(K))
    assert (v.status is Status.ADMITS) == (chi == 0)
    assert v.status in (Status.ADMITS, Status.OBSTRUCTED)


@settings(max_examples=40)
@given(invariant_complexes(max_vertices=6, max_dim=3))
def test_trivial_group_on_connected_complexes(data):
    K = data[0]
    used = {v for s in K.simplices if len(s) > 1 for v in s}
    K = SimplicialComplex.from_maximal(K.vertex_count, [s for s in K.simplices if set(s) <= used] or [(0,)])
    if len(connected_components(K)) != 1:
        return
    v = verdict_closed(models.trivial_on(K))
    assert (v.status is Status.ADMITS) == (K.euler_characteristic() == 0)


def test_disconnected_manifold_needs_every_component():
    # a torus next to a sphere: the sphere component obstructs
    T, S = models.torus_grid(), models.octahedron()
    tris = [s for s in T.simplices if len(s) == 3] + [tuple(v + 16 for v in s) for s in S.simplices if len(s) == 3]
    K = SimplicialComplex.from_maximal(22, tris)
    v = verdict_closed(models.trivial_on(K))
    assert v.status is Status.OBSTRUCTED and len(v.witnesses) == 1


# boundary -----------------------------------------------------------------------


def test_disk_with_cone_point():
    v = verdict_with_boundary(models.disk_z4())
    assert v.status is Status.OBSTRUCTED
    centre = [v.chi_es_values[i] for i in v.witnesses]
    assert centre == [Fraction(1, 4)] * 3
    assert all(not s.is_closed for s in v.table.sectors if s.is_trivial_class)


@pytest.mark.parametrize("spec", [models.trivial_interval, models.trivial_triangle, models.trivial_annulus])
def test_trivial_with_boundary_admits(spec):
    v = verdict_with_boundary(spec())
    assert v.status is Status.ADMITS and not v.witnesses


def _collared_disk_z4():
    # cone on a square, plus one more ring of four vertices outside it
    tris = [(0, 1 + k, 1 + (k + 1) % 4) for k in range(4)]
    for k in range(4):
        a, b = 1 + k, 1 + (k + 1) % 4
        tris += [(a, b, a + 4), (b, a + 4, b + 4)]
    bd = [(5 + k, 5 + (k + 1) % 4) for k in range(4)]
    K = SimplicialComplex.from_maximal(9, tris, boundary=bd)
    img = [0, 2, 3, 4, 1, 6, 7, 8, 5]
    G = group_from_generators([tuple(img)])
    return OrbifoldSpec.simplicial(K, SimplicialAction.from_generators(K, G, [img]))


def _long_interval():
    K = SimplicialComplex.from_maximal(4, [(0, 1), (1, 2), (2, 3)], boundary=[(0,), (3,)])
    return models.trivial_on(K)


def test_collar_does_not_change_boundary_verdict():
    a, b = verdict_with_boundary(models.disk_z4()), verdict_with_boundary(_collared_disk_z4())
    assert a.status is b.status is Status.OBSTRUCTED
    assert sorted(a.chi_es_values[i] for i in a.witnesses) == sorted(b.chi_es_values[i] for i in b.witnesses)
    assert verdict_with_boundary(models.trivial_interval()).status is verdict_with_boundary(_long_interval()).status


def test_full_boundary_triangle_gets_subdivided():
    # the interior triangle of a 2-disk has all vertices on the boundary
    v = verdict_with_boundary(models.trivial_triangle())
    assert v.status is Status.ADMITS


# open case --------------------------------------------------------------------


def test_open_pillowcase():
    pc = models.pillowcase()
    all_cones = [(0,), (2,), (8,), (10,)]
    assert verdict_open(pc, all_cones).status is Status.ADMITS
    one = verdict_open(pc, [(0,)])
    assert one.status is Status.OBSTRUCTED and len(one.witnesses) == 3
    assert verdict_open(models.trivial_torus(), [(0,)]).status is Status.ADMITS
    # removing a point from the sphere leaves an open disk
    assert verdict_open(models.trivial_sphere(), [(0,)]).status is Status.ADMITS


def test_open_case_errors():
    pc = models.pillowcase()
    with pytest.raises(ValueError, match="invariant"):
        verdict_open(pc, [(1,)])
    with pytest.raises(ValueError):
        verdict_open(pc, [(0, 5)])
    with pytest.raises(ValueError):
        verdict_open(models.disk_z4(), [(0,)])
