"""Concrete orbifolds used by the shipped spec files, the tests and the scripts."""
from __future__ import annotations

from fractions import Fraction

from .eqgeom.linear import RationalRep
from .eqgeom.simplicial import SimplicialAction, SimplicialComplex, barycentric_subdivision, join
from .fingroup import FiniteGroup, group_from_generators, perm_from_cycles
from .sectors import OrbifoldSpec


def trivial_group() -> FiniteGroup:
    return group_from_generators([(0,)])


def cyclic_perm_group(n: int) -> FiniteGroup:
    return group_from_generators([perm_from_cycles([list(range(1, n + 1))], n)])


# --------------------------------------------------------------------------
# complexes
# --------------------------------------------------------------------------


def torus_grid(n: int = 4) -> SimplicialComplex:
    """``n x n`` grid on the torus; vertex ``(i, j)`` is ``i*n + j``."""
    v = lambda i, j: (i % n) * n + (j % n)  # noqa: E731
    tris = []
    for i in range(n):
        for j in range(n):
            tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tris.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return SimplicialComplex.from_maximal(n * n, tris)


def octahedron() -> SimplicialComplex:
    """Boundary of the cross-polytope; vertex ``2k`` is ``+e_k``, ``2k+1`` is ``-e_k``."""
    tris = [(a, 2 + b, 4 + c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    return SimplicialComplex.from_maximal(6, tris)


def two_triangles() -> SimplicialComplex:
    return SimplicialComplex.from_maximal(6, [(0, 1, 2), (3, 4, 5)])


def square_circle() -> SimplicialComplex:
    """Four-vertex circle with vertex ``k`` at angle ``k * pi/2``."""
    return SimplicialComplex.from_maximal(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def tetrahedron_boundary() -> SimplicialComplex:
    return SimplicialComplex.from_maximal(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def cone_disk(rim: int = 4) -> SimplicialComplex:
    """Cone on a ``rim``-gon: vertex 0 is the centre, the boundary is the rim."""
    tris = [(0, 1 + k, 1 + (k + 1) % rim) for k in range(rim)]
    edges = [(1 + k, 1 + (k + 1) % rim) for k in range(rim)]
    return SimplicialComplex.from_maximal(rim + 1, tris, boundary=edges)


def interval() -> SimplicialComplex:
    return SimplicialComplex.from_maximal(2, [(0, 1)], boundary=[(0,), (1,)])


def triangle_disk() -> SimplicialComplex:
    return SimplicialComplex.from_maximal(3, [(0, 1, 2)], boundary=[(0, 1), (1, 2), (0, 2)])


def annulus(n: int = 4) -> SimplicialComplex:
    """Outer cycle ``0..n-1``, inner cycle ``n..2n-1``."""
    tris = []
    for k in range(n):
        a, b = k, (k + 1) % n
        tris.append((a, b, n + a))
        tris.append((b, n + b, n + a))
    bd = [(k, (k + 1) % n) for k in range(n)] + [(n + k, n + (k + 1) % n) for k in range(n)]
    return SimplicialComplex.from_maximal(2 * n, tris, boundary=bd)


# --------------------------------------------------------------------------
# orbifolds on complexes
# --------------------------------------------------------------------------


def trivial_on(K: SimplicialComplex, label: str = "") -> OrbifoldSpec:
    G = trivial_group()
    return OrbifoldSpec.simplicial(K, SimplicialAction.trivial(K, G), label)


def trivial_torus() -> OrbifoldSpec:
    return trivial_on(torus_grid(), "trivial group on the torus")


def trivial_sphere() -> OrbifoldSpec:
    return trivial_on(octahedron(), "trivial group on the 2-sphere")


def pillowcase(n: int = 4) -> OrbifoldSpec:
    """Torus modulo ``x -> -x``; four fixed vertices."""
    K = torus_grid(n)
    img = [((-i) % n) * n + (-j) % n for i in range(n) for j in range(n)]
    G = group_from_generators([tuple(img)])
    return OrbifoldSpec.simplicial(K, SimplicialAction.from_generators(K, G, [img]), "pillowcase")


def _octahedron_action(perm, label):
    K = octahedron()
    G = group_from_generators([tuple(perm)])
    return OrbifoldSpec.simplicial(K, SimplicialAction.from_generators(K, G, [perm]), label)


def octahedron_z4() -> OrbifoldSpec:
    """Quarter turn about the third axis."""
    return _octahedron_action([2, 3, 1, 0, 4, 5], "octahedron, quarter turn")


def octahedron_z2_axis() -> OrbifoldSpec:
    """Half turn about the third axis."""
    return _octahedron_action([1, 0, 3, 2, 4, 5], "octahedron, half turn about a vertex axis")


def octahedron_z2_edge() -> OrbifoldSpec:
    """Half turn about the axis through the midpoint of the edge ``+e1 +e2``."""
    return _octahedron_action([2, 3, 0, 1, 5, 4], "octahedron, half turn about an edge axis")


def octahedron_antipodal() -> OrbifoldSpec:
    return _octahedron_action([1, 0, 3, 2, 5, 4], "octahedron, antipodal map")


def octahedron_d6() -> OrbifoldSpec:
    """Permutations of the three axes (a group of order 6) on the octahedron."""
    K = octahedron()
    a = [2, 3, 4, 5, 0, 1]  # e1 -> e2 -> e3 -> e1
    b = [2, 3, 0, 1, 4, 5]  # e1 <-> e2
    G = group_from_generators([tuple(a), tuple(b)])
    return OrbifoldSpec.simplicial(K, SimplicialAction.from_generators(K, G, [a, b]), "axis permutations on the octahedron")


def swapped_triangles() -> OrbifoldSpec:
    K = two_triangles()
    img = [3, 4, 5, 0, 1, 2]
    G = group_from_generators([tuple(img)])
    return OrbifoldSpec.simplicial(K, SimplicialAction.from_generators(K, G, [img]), "two triangles swapped")


def klein_on_circle() -> OrbifoldSpec:
    """``diag(1,-1)`` and ``diag(-1,1)`` on the square circle."""
    K = square_circle()
    h = [0, 3, 2, 1]
    c = [2, 1, 0, 3]
    G = group_from_generators([tuple(h), tuple(c)])
    return OrbifoldSpec.simplicial(K, SimplicialAction.from_generators(K, G, [h, c]), "reflections of the circle")


def disk_z4() -> OrbifoldSpec:
    K = cone_disk(4)
    img = [0, 2, 3, 4, 1]
    G = group_from_generators([tuple(img)])
    return OrbifoldSpec.simplicial(K, SimplicialAction.from_generators(K, G, [img]), "disk with a cone point of order 4")


def trivial_interval() -> OrbifoldSpec:
    return trivial_on(interval(), "interval")


def trivial_triangle() -> OrbifoldSpec:
    return trivial_on(triangle_disk(), "2-disk")


def trivial_annulus() -> OrbifoldSpec:
    return trivial_on(annulus(), "annulus")


def regression_specs() -> dict[str, OrbifoldSpec]:
    """Closed simplicial inputs for the sum rule and subdivision checks."""
    return {
        "torus": trivial_torus(),
        "sphere": trivial_sphere(),
        "pillowcase": pillowcase(),
        "octahedron_z4": octahedron_z4(),
        "octahedron_z2_axis": octahedron_z2_axis(),
        "octahedron_z2_edge": octahedron_z2_edge(),
        "octahedron_antipodal": octahedron_antipodal(),
        "octahedron_d6": octahedron_d6(),
        "swapped_triangles": swapped_triangles(),
        "klein_on_circle": klein_on_circle(),
    }


# --------------------------------------------------------------------------
# representations
# --------------------------------------------------------------------------


def _perm_matrix(images, n):
    m = [[0] * n for _ in range(n)]
    for i, j in enumerate(images):
        m[j][i] = 1
    return m


def d6_generators():
    """The order-6 dihedral action on R^6: ``a`` cycles e1 e2 e3, ``b`` swaps e1 e2 and negates e4."""
    a = _perm_matrix([1, 2, 0, 3, 4, 5], 6)
    b = _perm_matrix([1, 0, 2, 3, 4, 5], 6)
    b[3][3] = -1
    return a, b


def d6_rep() -> RationalRep:
    a, b = d6_generators()
    G = group_from_generators([a, b])
    return RationalRep.of_matrix_group(G)


def d6_sphere() -> OrbifoldSpec:
    return OrbifoldSpec.sphere(d6_rep(), "dihedral group of order 6 on S^5")


def rotation_z4_rep() -> RationalRep:
    G = group_from_generators([[[0, -1, 0], [1, 0, 0], [0, 0, 1]]])
    return RationalRep.of_matrix_group(G)


def z4_sphere() -> OrbifoldSpec:
    return OrbifoldSpec.sphere(rotation_z4_rep(), "quarter turn on S^2")


def klein_plane_rep() -> RationalRep:
    G = group_from_generators([[[1, 0], [0, -1]], [[-1, 0], [0, 1]]])
    return RationalRep.of_matrix_group(G)


def d6_join_model() -> OrbifoldSpec:
    """Regular triangulation of the unit sphere of :func:`d6_rep`.

    The join of the subdivided octahedron on e1..e3, the two points ``+-e4``
    and the square on e5, e6; vertex order follows that join.
    """
    octa = octahedron()
    sd = barycentric_subdivision(octa).complex
    pts = SimplicialComplex.from_maximal(2, [(0,), (1,)])
    sq = square_circle()
    K = join(join(sd, pts), sq)
    # on the octahedron: vertex 2k is +e_k, 2k+1 is -e_k
    a_oct = [2, 3, 4, 5, 0, 1]
    b_oct = [2, 3, 0, 1, 4, 5]

    def on_sd(p):
        return [octa.index[tuple(sorted(p[v] for v in s))] for s in octa.simplices]

    n1 = sd.vertex_count
    a = on_sd(a_oct) + [n1, n1 + 1] + [n1 + 2 + k for k in range(4)]
    b = on_sd(b_oct) + [n1 + 1, n1] + [n1 + 2 + k for k in range(4)]
    G = d6_rep().group  # generator order (a, b) matches
    A = SimplicialAction.from_generators(K, G, [a, b])
    return OrbifoldSpec.simplicial(K, A, "triangulated S^5 with the dihedral action")


def bundle_z6_reps():
    """Base R^2 and fiber R^4 (complex lines written as real planes) over Z2 + Z3."""
    G = group_from_generators([perm_from_cycles([[1, 2]], 5), perm_from_cycles([[3, 4, 5]], 5)])
    rot = [[0, -1], [1, -1]]  # order 3
    base = RationalRep.from_generators(G, [[[-1, 0], [0, -1]], rot])
    f1 = [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    f2 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, -1]]
    fiber = RationalRep.from_generators(G, [f1, f2])
    return base, fiber


__all__ = [name for name in dir() if not name.startswith("_") and name not in {"Fraction", "annotations"}]
