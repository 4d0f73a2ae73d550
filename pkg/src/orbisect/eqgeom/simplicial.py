"""Finite simplicial complexes with simplicial finite-group actions.

Simplices are sorted vertex tuples. A complex keeps them sorted by
``(dimension, vertices)``, which makes the position of a simplex its id and
guarantees that every face has a smaller id than its cofaces.

An action is *regular* when every group element that maps a simplex to
itself fixes it vertex by vertex. For such actions the fixed set of a
subgroup is the subcomplex of simplices all of whose vertices are fixed,
and the orbits of simplices are the cells of the quotient.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from ..fingroup import FiniteGroup, Subgroup, _compose_perm

Simplex = tuple[int, ...]


class NotRegularError(ValueError):
    """Raised when an operation needs a regular action and gets another."""


def _key(s: Simplex):
    return (len(s), s)


def _closure(maximal: Iterable[Iterable[int]]) -> set[Simplex]:
    out: set[Simplex] = set()
    for m in maximal:
        m = tuple(sorted(set(int(v) for v in m)))
        if not m or m in out:
            continue
        for k in range(1, len(m) + 1):
            out.update(itertools.combinations(m, k))
    return out


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Face-closed set of simplices on vertices ``0 .. vertex_count-1``.

    ``boundary`` is an optional face-closed subset marking the boundary.
    Vertices need not all be used; subcomplexes keep the ambient count.
    """

    vertex_count: int
    simplices: tuple[Simplex, ...]
    boundary: frozenset[Simplex] | None = None

    @classmethod
    def from_maximal(cls, vertex_count: int, maximal: Iterable[Iterable[int]], boundary=None) -> "SimplicialComplex":
        simp = _closure(maximal)
        for s in simp:
            if s[0] < 0 or s[-1] >= vertex_count:
                raise ValueError(f"simplex {list(s)} uses a vertex outside 0..{vertex_count - 1}")
        bd = None
        if boundary is not None:
            bd = frozenset(_closure(boundary))
            missing = bd - simp
            if missing:
                raise ValueError(f"boundary simplex {list(min(missing))} is not a simplex of the complex")
        return cls(vertex_count, tuple(sorted(simp, key=_key)), bd)

    @cached_property
    def index(self) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices)}

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self.index

    @property
    def dim(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        f = [0] * (self.dim + 1)
        for s in self.simplices:
            f[len(s) - 1] += 1
        return tuple(f)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices if len(s) == 1)

    @cached_property
    def by_dim(self) -> list[np.ndarray]:
        """Simplex arrays per dimension, rows in id order."""
        out = []
        start = 0
        for k, n in enumerate(self.f_vector):
            rows = self.simplices[start:start + n]
            out.append(np.asarray(rows, dtype=np.int64).reshape(n, k + 1))
            start += n
        return out

    @cached_property
    def facets(self) -> tuple[Simplex, ...]:
        faces = set()
        for s in self.simplices:
            if len(s) > 1:
                faces.update(s[:i] + s[i + 1:] for i in range(len(s)))
        return tuple(s for s in self.simplices if s not in faces)

    @cached_property
    def local_dim(self) -> tuple[int, ...]:
        """Per simplex id, the largest dimension of a simplex containing it."""
        ld = [len(s) - 1 for s in self.simplices]
        idx = self.index
        for i in range(len(self.simplices) - 1, -1, -1):
            s = self.simplices[i]
            if len(s) > 1:
                for j in range(len(s)):
                    f = idx[s[:j] + s[j + 1:]]
                    if ld[i] > ld[f]:
                        ld[f] = ld[i]
        return tuple(ld)

    @property
    def has_boundary(self) -> bool:
        return bool(self.boundary)

    def boundary_complex(self) -> "SimplicialComplex":
        return SimplicialComplex(self.vertex_count, tuple(sorted(self.boundary or (), key=_key)))

    def subcomplex(self, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        """Subcomplex on the same vertex set; the input must be face-closed."""
        simp = sorted({tuple(s) for s in simplices}, key=_key)
        sset = set(simp)
        for s in simp:
            if len(s) > 1 and any(s[:i] + s[i + 1:] not in sset for i in range(len(s))):
                raise ValueError(f"{list(s)} has a face missing from the subcomplex")
        return SimplicialComplex(self.vertex_count, tuple(simp))

    def without_boundary(self) -> "SimplicialComplex":
        return SimplicialComplex(self.vertex_count, self.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertex_count={self.vertex_count}, f={list(self.f_vector)})"


def euler_characteristic(K: SimplicialComplex) -> int:
    return K.euler_characteristic()


def _vertex_labels(K: SimplicialComplex) -> tuple[int, np.ndarray]:
    edges = K.by_dim[1] if K.dim >= 1 else np.zeros((0, 2), dtype=np.int64)
    n = K.vertex_count
    graph = coo_matrix((np.ones(len(edges)), (edges[:, 0], edges[:, 1])), shape=(n, n))
    return _cc(graph, directed=False)


def connected_components(K: SimplicialComplex) -> list[SimplicialComplex]:
    """Components under shared-vertex adjacency, ordered by smallest vertex."""
    if not K.simplices:
        return []
    _, labels = _vertex_labels(K)
    groups: dict[int, list[Simplex]] = {}
    for s in K.simplices:
        groups.setdefault(int(labels[s[0]]), []).append(s)
    comps = sorted(groups.values(), key=lambda ss: ss[0][0])
    return [SimplicialComplex(K.vertex_count, tuple(c)) for c in comps]


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; vertices of ``K2`` are shifted by ``K1.vertex_count``."""
    off = K1.vertex_count
    a = [()] + list(K1.facets)
    b = [()] + [tuple(v + off for v in s) for s in K2.facets]
    return SimplicialComplex.from_maximal(off + K2.vertex_count, [x + y for x in a for y in b])


# --------------------------------------------------------------------------
# actions
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimplicialAction:
    """Left action of ``group`` on ``complex``.

    ``images[g, v]`` is the image of vertex ``v`` under element ``g``.
    """

    group: FiniteGroup
    complex: SimplicialComplex
    images: np.ndarray

    @classmethod
    def from_generators(cls, K: SimplicialComplex, G: FiniteGroup, gen_images: Sequence[Sequence[int]]) -> "SimplicialAction":
        n = K.vertex_count
        if len(gen_images) != len(G.generators):
            raise ValueError(f"need vertex images for {len(G.generators)} generators, got {len(gen_images)}")
        gens = []
        for k, img in enumerate(gen_images):
            img = tuple(int(v) for v in img)
            if sorted(img) != list(range(n)):
                raise ValueError(f"images for generator {k} are not a permutation of the {n} vertices")
            gens.append(img)
        values = G.extend(gens, _compose_perm, tuple(range(n)))
        if not G.is_homomorphism(values, gens, _compose_perm):
            raise ValueError("vertex images are not compatible with the group multiplication")
        act = cls(G, K, np.asarray(values, dtype=np.int64).reshape(G.order, n))
        act.simplex_perm  # validates that simplices go to simplices
        if K.boundary is not None:
            bd = [K.index[s] for s in K.boundary]
            if bd and not np.isin(act.simplex_perm[:, bd], bd).all():
                raise ValueError("boundary is not invariant under the action")
        return act

    @classmethod
    def trivial(cls, K: SimplicialComplex, G: FiniteGroup) -> "SimplicialAction":
        imgs = np.tile(np.arange(K.vertex_count, dtype=np.int64), (G.order, 1))
        return cls(G, K, imgs)

    @cached_property
    def simplex_perm(self) -> np.ndarray:
        """``simplex_perm[g, i]`` is the id of ``g`` applied to simplex ``i``."""
        K = self.complex
        out = np.empty((self.group.order, len(K)), dtype=np.int64)
        idx = K.index
        start = 0
        for arr in K.by_dim:
            m = len(arr)
            for g in range(self.group.order):
                img = np.sort(self.images[g][arr], axis=1)
                try:
                    out[g, start:start + m] = [idx[tuple(r)] for r in img.tolist()]
                except KeyError as e:
                    raise ValueError(f"element {g} maps a simplex to the non-simplex {list(e.args[0])}") from None
            start += m
        return out

    def apply(self, g: int, s: Simplex) -> Simplex:
        return tuple(sorted(int(self.images[g][v]) for v in s))

    @cached_property
    def kernel(self) -> Subgroup:
        ident = np.arange(self.complex.vertex_count)
        used = list(self.complex.vertices)
        return Subgroup(self.group, frozenset(g for g in range(self.group.order) if np.array_equal(self.images[g][used], ident[used])))

    def stabilizer(self, i: int) -> Subgroup:
        """Setwise stabilizer of simplex id ``i``."""
        return Subgroup(self.group, frozenset(int(g) for g in np.flatnonzero(self.simplex_perm[:, i] == i)))

    @cached_property
    def orbit_ids(self) -> np.ndarray:
        """Per simplex, the smallest simplex id in its orbit."""
        return self.simplex_perm.min(axis=0)


def is_regular(A: SimplicialAction) -> bool:
    """Setwise stabilizers of simplices equal the pointwise ones."""
    K = A.complex
    start = 0
    for arr in K.by_dim:
        m = len(arr)
        if arr.shape[1] > 1:
            block = A.simplex_perm[:, start:start + m]
            ids = np.arange(start, start + m)
            for g in range(A.group.order):
                fixed = block[g] == ids
                if fixed.any():
                    rows = arr[fixed]
                    if not np.array_equal(A.images[g][rows], rows):
                        return False
        start += m
    return True


def fixed_subcomplex(K: SimplicialComplex, A: SimplicialAction, H: Subgroup | Iterable[int]) -> SimplicialComplex:
    """Simplices fixed pointwise by every element of ``H``."""
    if A.complex is not K:
        raise ValueError("action is defined on a different complex")
    if not is_regular(A):
        raise NotRegularError("fixed subcomplex needs a regular action; regularize first")
    members = sorted(H.members if isinstance(H, Subgroup) else set(H))
    return K.subcomplex(K.simplices[i] for i in fixed_ids(A, members))


def fixed_ids(A: SimplicialAction, members: Iterable[int]) -> np.ndarray:
    """Simplex ids mapped to themselves by all of ``members`` (regular actions)."""
    members = list(members)
    n = len(A.complex)
    if not members:
        return np.arange(n)
    perm = A.simplex_perm[members]
    return np.flatnonzero((perm == np.arange(n)).all(axis=0))


# --------------------------------------------------------------------------
# quotient
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientComplex:
    """Orbits of simplices of a regular action, one cell per orbit.

    ``projection[i]`` is the cell of simplex id ``i``. ``complex`` is the
    quotient as a simplicial complex on the vertex orbits when that
    description is faithful (always after two subdivisions), else ``None``.
    """

    cells: tuple[int, ...]  # representative simplex id per cell
    dims: tuple[int, ...]
    projection: np.ndarray
    complex: SimplicialComplex | None

    def euler_characteristic(self) -> int:
        return sum((-1) ** d for d in self.dims)

    def __len__(self) -> int:
        return len(self.cells)

    def image(self, simplex_ids: Iterable[int]) -> frozenset[int]:
        ids = np.fromiter(simplex_ids, dtype=np.int64)
        return frozenset(int(c) for c in np.unique(self.projection[ids]))


def quotient_complex(K: SimplicialComplex, A: SimplicialAction) -> QuotientComplex:
    if A.complex is not K:
        raise ValueError("action is defined on a different complex")
    if not is_regular(A):
        raise NotRegularError("quotient needs a regular action; regularize first")
    reps = np.unique(A.orbit_ids)
    cell_of = {int(r): c for c, r in enumerate(reps)}
    projection = np.array([cell_of[int(o)] for o in A.orbit_ids], dtype=np.int64)
    dims = tuple(len(K.simplices[r]) - 1 for r in reps)

    vorb = {}
    for v in K.vertices:
        vorb[v] = int(A.images[:, v].min())
    names = {o: i for i, o in enumerate(sorted(set(vorb.values())))}
    simp = []
    for r in reps:
        s = K.simplices[r]
        simp.append(tuple(sorted({names[vorb[v]] for v in s})))
    faithful = all(len(q) == len(K.simplices[r]) for q, r in zip(simp, reps)) and len(set(simp)) == len(simp)
    Q = None
    if faithful:
        sset = set(simp)
        if all(len(q) == 1 or all(q[:i] + q[i + 1:] in sset for i in range(len(q))) for q in simp):
            Q = SimplicialComplex(len(names), tuple(sorted(simp, key=_key)))
    return QuotientComplex(tuple(int(r) for r in reps), dims, projection, Q)


# --------------------------------------------------------------------------
# subdivision and regularization
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subdivision:
    """Barycentric subdivision ``sd(K)``.

    New vertex ``i`` is the barycenter of simplex id ``i`` of ``parent``;
    ``origin[i]`` is that simplex. A simplex of ``sd(K)`` is a chain of
    simplices of ``K``; it lies in ``sd(L)`` for a subcomplex ``L`` exactly
    when its top element, i.e. its largest vertex, lies in ``L``.
    """

    parent: SimplicialComplex
    complex: SimplicialComplex
    action: SimplicialAction | None

    @property
    def origin(self) -> tuple[Simplex, ...]:
        return self.parent.simplices

    def lift(self, L: Iterable[Simplex]) -> frozenset[Simplex]:
        ids = {self.parent.index[tuple(s)] for s in L}
        return frozenset(s for s in self.complex.simplices if s[-1] in ids)

    def carrier(self, v: int) -> Simplex:
        """Simplex of the parent whose interior contains new vertex ``v``."""
        return self.parent.simplices[v]

    def __iter__(self) -> Iterator:
        yield self.complex
        yield self.action


def barycentric_subdivision(K: SimplicialComplex, A: SimplicialAction | None = None) -> Subdivision:
    idx = K.index
    chains: list[list[Simplex]] = []
    for i, s in enumerate(K.simplices):
        mine = [(i,)]
        for k in range(1, len(s)):
            for f in itertools.combinations(s, k):
                mine.extend(c + (i,) for c in chains[idx[f]])
        chains.append(mine)
    simp = sorted((c for cs in chains for c in cs), key=_key)
    boundary = None
    if K.boundary is not None:
        bids = {idx[s] for s in K.boundary}
        boundary = frozenset(c for c in simp if c[-1] in bids)
    Kp = SimplicialComplex(len(K), tuple(simp), boundary)
    Ap = None
    if A is not None:
        if A.complex is not K:
            raise ValueError("action is defined on a different complex")
        Ap = SimplicialAction(A.group, Kp, A.simplex_perm.copy())
    return Subdivision(K, Kp, Ap)


@dataclass(frozen=True, eq=False)
class Regularization:
    """Result of ``regularize``: the final complex and action plus the steps."""

    original: SimplicialComplex
    complex: SimplicialComplex
    action: SimplicialAction
    steps: tuple[Subdivision, ...] = field(default=())

    @property
    def passes(self) -> int:
        return len(self.steps)

    def lift(self, L: Iterable[Simplex]) -> frozenset[Simplex]:
        cur = frozenset(tuple(s) for s in L)
        for st in self.steps:
            cur = st.lift(cur)
        return cur

    def carrier(self, v: int) -> Simplex:
        """Simplex of the original complex whose interior contains vertex ``v``."""
        s: Simplex = (v,)
        for st in reversed(self.steps):
            s = st.parent.simplices[s[-1]]
        return s

    def __iter__(self) -> Iterator:
        yield self.complex
        yield self.action


DEFAULT_PASSES = 2


def regularize(K: SimplicialComplex, A: SimplicialAction, passes: int | None = None) -> Regularization:
    """Subdivide ``passes`` times (default two) unless ``A`` is already regular."""
    if A.complex is not K:
        raise ValueError("action is defined on a different complex")
    if is_regular(A):
        return Regularization(K, K, A, ())
    n = DEFAULT_PASSES if passes is None else passes
    steps = []
    cur_k, cur_a = K, A
    for _ in range(n):
        st = barycentric_subdivision(cur_k, cur_a)
        steps.append(st)
        cur_k, cur_a = st.complex, st.action
    if not is_regular(cur_a):
        raise NotRegularError(f"action still irregular after {n} subdivisions")
    return Regularization(K, cur_k, cur_a, tuple(steps))


# --------------------------------------------------------------------------
# doubling along the boundary
# --------------------------------------------------------------------------

INTERIOR, MIRROR, ON_BOUNDARY = 0, 1, -1


@dataclass(frozen=True, eq=False)
class Double:
    """Two copies of a complex glued along its boundary.

    ``side[v]`` is ``INTERIOR`` for vertices of the original copy off the
    boundary, ``MIRROR`` for their copies and ``ON_BOUNDARY`` for boundary
    vertices. ``source`` is the complex that was doubled (after the optional
    subdivision recorded in ``subdivision``).
    """

    complex: SimplicialComplex
    action: SimplicialAction
    side: np.ndarray
    source: SimplicialComplex
    subdivision: Subdivision | None

    def __iter__(self) -> Iterator:
        yield self.complex
        yield self.action

    @cached_property
    def original_ids(self) -> np.ndarray:
        """Ids of the simplices of the original copy (no mirror vertex)."""
        mirror = self.side == MIRROR
        return np.array([i for i, s in enumerate(self.complex.simplices) if not mirror[list(s)].any()], dtype=np.int64)


def double(K: SimplicialComplex, A: SimplicialAction) -> Double:
    """Glue two copies of ``K`` along ``K.boundary``; the group acts on both copies alike."""
    if A.complex is not K:
        raise ValueError("action is defined on a different complex")
    if K.boundary is None:
        raise ValueError("complex has no boundary marked")
    bd = K.boundary
    if bd:
        bids = [K.index[s] for s in bd]
        if not np.isin(A.simplex_perm[:, bids], bids).all():
            raise ValueError("boundary is not invariant under the action")
    sub = None
    bverts = {s[0] for s in bd if len(s) == 1}
    if any(s not in bd and all(v in bverts for v in s) for s in K.simplices):
        # gluing by vertices would identify such a simplex with its mirror
        sub = barycentric_subdivision(K, A)
        K, A = sub.complex, sub.action
        bd = K.boundary
        bverts = {s[0] for s in bd if len(s) == 1}
    n = K.vertex_count
    interior = [v for v in range(n) if v not in bverts]
    mirror_of = {v: n + i for i, v in enumerate(interior)}
    N = n + len(interior)
    simp = set(K.simplices)
    for s in K.simplices:
        if s not in bd:
            simp.add(tuple(sorted(mirror_of.get(v, v) for v in s)))
    D = SimplicialComplex(N, tuple(sorted(simp, key=_key)), frozenset())
    side = np.full(N, ON_BOUNDARY, dtype=np.int64)
    side[interior] = INTERIOR
    side[n:] = MIRROR
    imgs = np.empty((A.group.order, N), dtype=np.int64)
    imgs[:, :n] = A.images
    mirror_arr = np.arange(n)
    for v, m in mirror_of.items():
        mirror_arr[v] = m
    if interior:
        imgs[:, n:] = mirror_arr[A.images[:, interior]]
    return Double(D, SimplicialAction(A.group, D, imgs), side, K, sub)


__all__ = [
    "SimplicialComplex",
    "SimplicialAction",
    "QuotientComplex",
    "Subdivision",
    "Regularization",
    "Double",
    "NotRegularError",
    "euler_characteristic",
    "connected_components",
    "join",
    "is_regular",
    "fixed_subcomplex",
    "fixed_ids",
    "quotient_complex",
    "barycentric_subdivision",
    "regularize",
    "double",
]
