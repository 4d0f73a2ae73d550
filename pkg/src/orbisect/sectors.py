"""Gamma-sectors of a global quotient ``M/G``.

For each simultaneous-conjugation class of homomorphisms ``phi: Gamma -> G``
with representative ``phi``, the sectors over that class are the orbits of
the centralizer ``C = C_G(Im phi)`` on the connected components of the fixed
set ``M^{Im phi}``. A sector's Euler-Satake characteristic is the Euler
characteristic of the union of the components in its orbit divided by
``|C|``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .config import Caps, resolve
from .eqgeom import linear as lin
from .eqgeom import simplicial as simp
from .fingroup import (
    FiniteGroup,
    GammaPresentation,
    Hom,
    HomClass,
    Subgroup,
    centralizer,
    enumerate_homs,
    hom_classes,
)

SIMPLICIAL, SPHERE, AFFINE = "simplicial", "sphere", "affine"


# --------------------------------------------------------------------------
# input
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrbifoldSpec:
    """A finite group acting on a simplicial complex or a rational representation.

    ``model`` selects the space: ``"simplicial"`` (the complex itself,
    optionally with boundary), ``"sphere"`` (unit sphere of the
    representation) or ``"affine"`` (the whole representation space).
    ``subdivisions`` overrides how many barycentric subdivisions are applied
    when the simplicial action is not regular.
    """

    group: FiniteGroup
    model: str
    complex: simp.SimplicialComplex | None = None
    action: simp.SimplicialAction | None = None
    rep: lin.RationalRep | None = None
    label: str = ""
    subdivisions: int | None = None

    def __post_init__(self):
        if self.model == SIMPLICIAL:
            if self.complex is None or self.action is None:
                raise ValueError("simplicial model needs a complex and an action")
            if self.action.complex is not self.complex or self.action.group is not self.group:
                raise ValueError("action does not belong to this complex and group")
        elif self.model in (SPHERE, AFFINE):
            if self.rep is None or self.rep.group is not self.group:
                raise ValueError(f"{self.model} model needs a representation of the group")
            if self.model == SPHERE and self.rep.dim < 1:
                raise ValueError("sphere model needs dimension at least 1")
        else:
            raise ValueError(f"unknown model {self.model!r}")

    @classmethod
    def simplicial(cls, K, A, label: str = "", subdivisions: int | None = None) -> "OrbifoldSpec":
        return cls(A.group, SIMPLICIAL, complex=K, action=A, label=label, subdivisions=subdivisions)

    @classmethod
    def sphere(cls, rep, label: str = "") -> "OrbifoldSpec":
        return cls(rep.group, SPHERE, rep=rep, label=label)

    @classmethod
    def affine(cls, rep, label: str = "") -> "OrbifoldSpec":
        return cls(rep.group, AFFINE, rep=rep, label=label)

    @property
    def has_boundary(self) -> bool:
        return self.model == SIMPLICIAL and self.complex.has_boundary

    @property
    def dim(self) -> int:
        if self.model == SIMPLICIAL:
            return self.complex.dim
        return self.rep.dim - 1 if self.model == SPHERE else self.rep.dim

    @cached_property
    def regularization(self) -> simp.Regularization:
        return simp.regularize(self.complex, self.action, self.subdivisions)

    def subdivided(self) -> "OrbifoldSpec":
        """Same orbifold presented on one extra barycentric subdivision."""
        if self.model != SIMPLICIAL:
            raise ValueError("only simplicial specs can be subdivided")
        K, A = simp.barycentric_subdivision(self.complex, self.action)
        return replace(self, complex=K, action=A, label=self.label + "+sd" if self.label else "")

    def codim_violations(self) -> list[int]:
        """Elements acting nontrivially with a fixed set of codimension below two."""
        if self.model != SIMPLICIAL:
            return lin.codim_violations(self.rep)
        if self.has_boundary:
            K, A = geometry_for(self).complex, geometry_for(self).action
        else:
            K, A = self.regularization.complex, self.regularization.action
        return simplicial_codim_violations(K, A)


def simplicial_codim_violations(K: simp.SimplicialComplex, A: simp.SimplicialAction) -> list[int]:
    ld = K.local_dim
    ker = A.kernel
    bad = []
    for g in range(A.group.order):
        if g in ker:
            continue
        ids = simp.fixed_ids(A, [g])
        if not len(ids):
            continue
        F = K.subcomplex(K.simplices[i] for i in ids)
        fld = F.local_dim
        for j, s in enumerate(F.simplices):
            if ld[K.index[s]] - fld[j] < 2:
                bad.append(g)
                break
    return bad


def euler_satake(spec: OrbifoldSpec) -> Fraction:
    """``chi(M) / |G|``."""
    n = spec.group.order
    if spec.model == SIMPLICIAL:
        return Fraction(spec.complex.euler_characteristic(), n)
    if spec.model == SPHERE:
        return Fraction(1 + (-1) ** (spec.rep.dim - 1), n)
    return Fraction(1, n)


# --------------------------------------------------------------------------
# supports
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialSupport:
    """Simplex ids (in the working complex) and their quotient cells."""

    simplex_ids: frozenset[int]
    cells: frozenset[int]
    touches_boundary: bool = False

    def ref(self, K: simp.SimplicialComplex) -> str:
        vs = sorted({v for i in self.simplex_ids for v in K.simplices[i]})
        return f"cells:{len(self.cells)} vertices:{len(vs)} first:{vs[0]}"


@dataclass(frozen=True)
class LinearSupport:
    """A fixed subspace and which part of it the sector lives on.

    ``piece`` is ``"sphere"`` (the unit sphere of ``space``), ``"ray"`` (the
    single unit vector along ``direction``) or ``"affine"`` (the whole
    subspace).
    """

    space: lin.FixedSpace
    piece: str
    direction: linalg.Vector | None = None

    def ref(self) -> str:
        def fmt(v):
            return "(" + ",".join(linalg.format_fraction(x) for x in v) + ")"

        if self.piece == "ray":
            return "ray:" + fmt(self.direction)
        return f"{self.piece}[{self.space.dim}]:" + ",".join(fmt(v) for v in self.space.basis)


# --------------------------------------------------------------------------
# sectors and tables
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Sector:
    sector_id: int
    class_id: int
    hom_class: HomClass = field(repr=False)
    image: Subgroup = field(repr=False)
    centralizer: Subgroup = field(repr=False)
    support: SimplicialSupport | LinearSupport = field(repr=False)
    dim: int
    chi_numerator: int
    is_closed: bool
    is_trivial_class: bool
    support_ref: str = ""

    @property
    def rep_hom(self) -> Hom:
        return self.hom_class.representative

    @property
    def chi_es(self) -> Fraction:
        return Fraction(self.chi_numerator, self.centralizer.order)

    @property
    def class_size(self) -> int:
        return len(self.hom_class)


@dataclass(frozen=True, eq=False)
class Geometry:
    """The complex sectors are computed on, with bookkeeping for boundary and open cases."""

    complex: simp.SimplicialComplex
    action: simp.SimplicialAction
    quotient: simp.QuotientComplex
    double: simp.Double | None = None
    removed: frozenset[int] | None = None  # vertex ids of the removed subcomplex


@dataclass(frozen=True, eq=False)
class SectorTable:
    spec: OrbifoldSpec = field(repr=False)
    gamma: GammaPresentation
    sectors: tuple[Sector, ...]
    classes: tuple[HomClass, ...] = field(repr=False)
    empty_classes: tuple[int, ...]
    geometry: Geometry | None = field(default=None, repr=False)
    notes: tuple[str, ...] = ()

    @property
    def hom_class_count(self) -> int:
        return len(self.classes)

    @property
    def total_hom_count(self) -> int:
        return sum(len(c) for c in self.classes)

    def __len__(self) -> int:
        return len(self.sectors)

    def __iter__(self):
        return iter(self.sectors)

    def by_class(self, class_id: int) -> list[Sector]:
        return [s for s in self.sectors if s.class_id == class_id]

    @cached_property
    def poset(self) -> "SectorPoset":
        return sector_poset(self)

    def summary(self) -> dict:
        """Presentation-independent digest used by subdivision-invariance checks."""
        return {
            "classes": self.hom_class_count,
            "sectors": len(self.sectors),
            "dims": sorted(s.dim for s in self.sectors),
            "chi_es": sorted(s.chi_es for s in self.sectors),
            "poset_nodes": len(self.poset.nodes),
            "poset_edges": len(self.poset.edges),
        }


def geometry_for(spec: OrbifoldSpec) -> Geometry:
    """Regularized (and, with boundary, doubled) complex for a simplicial spec."""
    cached = spec.__dict__.get("_geometry")
    if cached is not None:
        return cached
    K, A = spec.regularization
    dbl = None
    if K.has_boundary:
        dbl = simp.double(K, A)
        K, A = dbl.complex, dbl.action
    geo = Geometry(K, A, simp.quotient_complex(K, A), double=dbl)
    object.__setattr__(spec, "_geometry", geo)
    return geo


def _component_orbits(K, A, ids: np.ndarray, C: Subgroup) -> list[np.ndarray]:
    """Group the connected components of the subcomplex ``ids`` into ``C``-orbits."""
    sub = [K.simplices[i] for i in ids]
    comps = simp.connected_components(K.subcomplex(sub))
    label = {}
    for k, comp in enumerate(comps):
        for v in comp.vertices:
            label[v] = k
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in sorted(C.members):
        for k, comp in enumerate(comps):
            j = label[int(A.images[c][comp.vertices[0]])]
            a, b = find(k), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for k in range(len(comps)):
        orbits.setdefault(find(k), []).append(k)
    out = []
    for root in sorted(orbits):
        members = [s for k in orbits[root] for s in comps[k].simplices]
        out.append(np.array(sorted(K.index[s] for s in members), dtype=np.int64))
    return out


def _chi(K, ids: Iterable[int]) -> int:
    return sum((-1) ** (len(K.simplices[i]) - 1) for i in ids)


def _dim(K, ids: Iterable[int]) -> int:
    return max((len(K.simplices[i]) - 1 for i in ids), default=-1)


def compute_sectors(spec: OrbifoldSpec, gamma: GammaPresentation, caps: Caps | None = None) -> SectorTable:
    caps = resolve(caps)
    G = spec.group
    homs = enumerate_homs(gamma, G, caps)
    classes = hom_classes(G, homs)
    notes: list[str] = []
    sectors: list[Sector] = []
    empty: list[int] = []
    geo = None
    if spec.model == SIMPLICIAL:
        reg = spec.regularization
        if reg.passes:
            notes.append(f"action was not regular; applied {reg.passes} barycentric subdivisions")
        geo = geometry_for(spec)
        if geo.double is not None:
            notes.append("boundary handled on the double; supports restricted to the original copy")
    for cid, hc in enumerate(classes):
        rep = hc.representative
        H = rep.image()
        C = centralizer(G, rep.images)
        trivial_class = H.order == 1
        if spec.model == SIMPLICIAL:
            pieces = _simplicial_pieces(geo, H, C)
        else:
            pieces = _linear_pieces(spec, H, C)
        if not pieces:
            empty.append(cid)
            continue
        for support, dim, chi_num, closed in pieces:
            ref = support.ref(geo.complex) if isinstance(support, SimplicialSupport) else support.ref()
            sectors.append(
                Sector(
                    sector_id=len(sectors),
                    class_id=cid,
                    hom_class=hc,
                    image=H,
                    centralizer=C,
                    support=support,
                    dim=dim,
                    chi_numerator=chi_num,
                    is_closed=closed,
                    is_trivial_class=trivial_class,
                    support_ref=ref,
                )
            )
    if empty:
        notes.append(f"{len(empty)} hom classes have empty fixed set and give no sector")
    return SectorTable(spec, gamma, tuple(sectors), tuple(classes), tuple(empty), geo, tuple(notes))


def _simplicial_pieces(geo: Geometry, H: Subgroup, C: Subgroup):
    K, A, Q = geo.complex, geo.action, geo.quotient
    ids = simp.fixed_ids(A, sorted(H.members))
    if not len(ids):
        return []
    out = []
    if geo.double is None:
        for orb in _component_orbits(K, A, ids, C):
            sup = SimplicialSupport(frozenset(int(i) for i in orb), Q.image(orb))
            out.append((sup, _dim(K, orb), _chi(K, orb), True))
        return out
    # boundary case: orbits in the double, restricted to the original copy
    dbl = geo.double
    original = set(int(i) for i in dbl.original_ids)
    on_boundary = dbl.side == simp.ON_BOUNDARY
    for orb in _component_orbits(K, A, ids, C):
        kept = np.array([i for i in orb if int(i) in original], dtype=np.int64)
        if not len(kept):
            continue
        for piece in _component_orbits(K, A, kept, C):
            touches = bool(on_boundary[[v for i in piece for v in K.simplices[i]]].any())
            sup = SimplicialSupport(frozenset(int(i) for i in piece), Q.image(piece), touches)
            out.append((sup, _dim(K, piece), _chi(K, piece), not touches))
    return out


def _linear_pieces(spec: OrbifoldSpec, H: Subgroup, C: Subgroup):
    R = spec.rep
    F = lin.fixed_subspace(R, H)
    if spec.model == AFFINE:
        return [(LinearSupport(F, "affine"), F.dim, 1, F.dim == 0)]
    geo = lin.sphere_sector_geometry(R, F, C)
    if geo.components == 0:
        return []
    if F.dim >= 2 or geo.components == 1:
        return [(LinearSupport(F, "sphere"), geo.dim, geo.chi_numerators[0], True)]
    v = F.basis[0]
    neg = tuple(-x for x in v)
    return [
        (LinearSupport(F, "ray", v), 0, 1, True),
        (LinearSupport(F, "ray", neg), 0, 1, True),
    ]


def inertia(spec: OrbifoldSpec, caps: Caps | None = None) -> SectorTable:
    return compute_sectors(spec, GammaPresentation.free(1), caps)


def multisectors(spec: OrbifoldSpec, k: int, caps: Caps | None = None) -> SectorTable:
    return compute_sectors(spec, GammaPresentation.free(k), caps)


def open_sectors(spec: OrbifoldSpec, removed: Iterable[Sequence[int]], gamma: GammaPresentation, caps: Caps | None = None) -> SectorTable:
    """Sectors of the complement of an invariant subcomplex in a closed simplicial orbifold.

    ``removed`` lists simplices of the original complex (closure taken).
    Ambient sectors inside the removed set disappear, those meeting it lose
    compactness, and the rest stay closed.
    """
    if spec.model != SIMPLICIAL:
        raise ValueError("open suborbifolds are only supported for simplicial specs")
    if spec.has_boundary:
        raise ValueError("the ambient orbifold must be closed")
    K0 = spec.complex
    R0 = simp._closure(removed)
    missing = [s for s in R0 if s not in K0.index]
    if missing:
        raise ValueError(f"removed simplex {list(min(missing))} is not in the complex")
    rids = [K0.index[s] for s in R0]
    if rids and not np.isin(spec.action.simplex_perm[:, rids], rids).all():
        raise ValueError("removed subcomplex is not invariant under the action")
    ambient = compute_sectors(spec, gamma, caps)
    geo = ambient.geometry
    K = geo.complex
    R = spec.regularization.lift(R0)
    rverts = frozenset(s[0] for s in R if len(s) == 1)
    rsimp = {K.index[s] for s in R}
    kept = []
    dropped = 0
    for s in ambient.sectors:
        ids = s.support.simplex_ids
        if ids <= rsimp:
            dropped += 1
            continue
        meets = any(v in rverts for i in ids for v in K.simplices[i])
        sup = replace(s.support, touches_boundary=meets)
        kept.append(replace(s, sector_id=len(kept), support=sup, is_closed=not meets))
    notes = list(ambient.notes)
    notes.append(f"removed subcomplex with {len(R0)} simplices; {dropped} sectors lie inside it")
    ogeo = replace(geo, removed=rverts)
    return SectorTable(spec, gamma, tuple(kept), ambient.classes, ambient.empty_classes, ogeo, tuple(notes))


# --------------------------------------------------------------------------
# order
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SectorPoset:
    """Equivalence classes of sectors under equal support image, ordered by inclusion.

    ``nodes[k]`` lists the sector ids of node ``k``; ``edges`` are the
    covering pairs ``(lower, upper)`` of node ids.
    """

    nodes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    minimal_ids: tuple[int, ...]
    leq: np.ndarray = field(repr=False, compare=False)  # node-level, reflexive

    def node_of(self, sector_id: int) -> int:
        for k, members in enumerate(self.nodes):
            if sector_id in members:
                return k
        raise KeyError(sector_id)

    def less(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b]) and a != b


def sector_leq(table: SectorTable) -> np.ndarray:
    """``m[i, j]`` iff the support image of sector ``i`` lies in that of sector ``j``."""
    n = len(table.sectors)
    m = np.zeros((n, n), dtype=bool)
    secs = table.sectors
    if table.spec.model == SIMPLICIAL:
        for i, a in enumerate(secs):
            for j, b in enumerate(secs):
                m[i, j] = a.support.cells <= b.support.cells
        return m
    R = table.spec.rep
    G = table.spec.group
    moved: dict[tuple[int, int], lin.FixedSpace] = {}

    def g_space(j, g):
        key = (j, g)
        if key not in moved:
            moved[key] = lin.transform(R, g, secs[j].support.space)
        return moved[key]

    for i, a in enumerate(secs):
        for j, b in enumerate(secs):
            m[i, j] = i == j or any(_piece_in(R, a.support, b.support, g, g_space(j, g)) for g in range(G.order))
    return m


def _piece_in(R, a: LinearSupport, b: LinearSupport, g: int, gb: lin.FixedSpace) -> bool:
    if b.piece != "ray":
        return lin.subspace_leq(a.space, gb)
    if a.piece != "ray":
        return False
    target = linalg.matvec(R(g), b.direction)
    return a.direction == target


def sector_poset(table: SectorTable) -> SectorPoset:
    m = sector_leq(table)
    n = len(table.sectors)
    node_of = [-1] * n
    nodes: list[list[int]] = []
    for i in range(n):
        if node_of[i] >= 0:
            continue
        members = [j for j in range(n) if m[i, j] and m[j, i]]
        for j in members:
            node_of[j] = len(nodes)
        nodes.append(members)
    k = len(nodes)
    leq = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(k):
            leq[a, b] = m[nodes[a][0], nodes[b][0]]
    edges = []
    for a in range(k):
        for b in range(k):
            if a != b and leq[a, b]:
                if not any(c not in (a, b) and leq[a, c] and leq[c, b] for c in range(k)):
                    edges.append((a, b))
    minimal = tuple(a for a in range(k) if not any(b != a and leq[b, a] for b in range(k)))
    return SectorPoset(tuple(tuple(x) for x in nodes), tuple(edges), minimal, leq)


def minimal_sectors(poset: SectorPoset) -> list[int]:
    return list(poset.minimal_ids)


__all__ = [
    "OrbifoldSpec",
    "Sector",
    "SectorTable",
    "SectorPoset",
    "SimplicialSupport",
    "LinearSupport",
    "Geometry",
    "compute_sectors",
    "open_sectors",
    "euler_satake",
    "sector_poset",
    "sector_leq",
    "minimal_sectors",
    "inertia",
    "multisectors",
    "geometry_for",
]
