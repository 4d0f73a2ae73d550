"""Exact rational representations and their fixed subspaces.

A :class:`RationalRep` assigns a rational matrix to every element of a
finite group. Two geometric models are built on it: the unit sphere of the
representation space (compact, closed) and the whole vector space (the
affine model, used for bundles over a linear chart).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .. import linalg
from ..fingroup import FiniteGroup, Subgroup, all_subgroups, small_generating_set, trivial
from ..linalg import Matrix, Vector


@dataclass(frozen=True, eq=False)
class RationalRep:
    group: FiniteGroup
    dim: int
    matrices: tuple[Matrix, ...]  # one per element id

    @classmethod
    def from_generators(cls, G: FiniteGroup, gen_matrices: Sequence) -> "RationalRep":
        if len(gen_matrices) != len(G.generators):
            raise ValueError(f"need {len(G.generators)} generator matrices, got {len(gen_matrices)}")
        mats = [linalg.as_matrix(m) for m in gen_matrices]
        if not mats:
            raise ValueError("need at least one generator matrix")
        n = len(mats[0])
        for k, m in enumerate(mats):
            if len(m) != n or any(len(r) != n for r in m):
                raise ValueError(f"generator matrix {k} is not {n}x{n}")
            if not linalg.is_invertible(m):
                raise ValueError(f"generator matrix {k} is not invertible")
        values = G.extend(mats, linalg.matmul, linalg.identity(n))
        if not G.is_homomorphism(values, mats, linalg.matmul):
            raise ValueError("matrices do not define a representation of the group")
        return cls(G, n, tuple(values))

    @classmethod
    def of_matrix_group(cls, G: FiniteGroup) -> "RationalRep":
        if G.kind != "matrix":
            raise ValueError("group is not a matrix group")
        return cls(G, G.degree, tuple(G.elements))

    def __call__(self, g: int) -> Matrix:
        return self.matrices[g]

    @cached_property
    def kernel(self) -> Subgroup:
        one = linalg.identity(self.dim)
        return Subgroup(self.group, frozenset(g for g, m in enumerate(self.matrices) if m == one))

    def is_faithful(self) -> bool:
        return self.kernel.order == 1


@dataclass(frozen=True)
class FixedSpace:
    """Subspace given by its reduced row-echelon basis (so equal spaces compare equal)."""

    ambient: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return linalg.in_span(self.basis, v)


def span(ambient: int, vectors: Iterable[Sequence]) -> FixedSpace:
    vecs = [tuple(linalg.to_fraction(x) for x in v) for v in vectors]
    return FixedSpace(ambient, linalg.canonical_basis(vecs, ambient))


def fixed_subspace(R: RationalRep, H: Subgroup | Iterable[int]) -> FixedSpace:
    """``{v : h v = v for all h in H}``, solved over a generating set of ``H``."""
    if isinstance(H, Subgroup):
        gens = small_generating_set(H)
    else:
        gens = sorted(set(H))
    n = R.dim
    rows = []
    one = linalg.identity(n)
    for h in gens:
        rows.extend(linalg.sub(R(h), one))
    return span(n, linalg.nullspace(rows, n))


def subspace_leq(A: FixedSpace, B: FixedSpace) -> bool:
    if A.ambient != B.ambient:
        raise ValueError("subspaces live in different dimensions")
    return all(B.contains(v) for v in A.basis)


def transform(R: RationalRep, g: int, F: FixedSpace) -> FixedSpace:
    return span(F.ambient, (linalg.matvec(R(g), v) for v in F.basis))


def is_invariant(R: RationalRep, F: FixedSpace, C: Subgroup) -> bool:
    return all(F.contains(linalg.matvec(R(c), v)) for c in small_generating_set(C) for v in F.basis)


def pointwise_stabilizer(R: RationalRep, F: FixedSpace) -> Subgroup:
    G = R.group
    return Subgroup(G, frozenset(g for g in range(G.order) if all(linalg.matvec(R(g), v) == v for v in F.basis)))


@dataclass(frozen=True)
class SphereGeometry:
    """Components of the unit sphere of a fixed subspace modulo a centralizer."""

    dim: int  # dimension of the sphere S(F), i.e. dim F - 1
    chi_numerators: tuple[int, ...]  # one per component orbit

    @property
    def components(self) -> int:
        return len(self.chi_numerators)


def sphere_sector_geometry(R: RationalRep, F: FixedSpace, C: Subgroup) -> SphereGeometry:
    if not is_invariant(R, F, C):
        raise ValueError("fixed subspace is not invariant under the centralizer")
    d = F.dim
    if d == 0:
        return SphereGeometry(-1, ())
    if d >= 2:
        return SphereGeometry(d - 1, (1 + (-1) ** (d - 1),))
    v = F.basis[0]
    neg = tuple(-x for x in v)
    if any(linalg.matvec(R(c), v) == neg for c in C.members):
        return SphereGeometry(0, (2,))
    return SphereGeometry(0, (1, 1))


def codim_violations(R: RationalRep) -> list[int]:
    """Elements acting nontrivially whose fixed subspace has codimension below two."""
    bad = []
    ker = R.kernel
    for g in range(R.group.order):
        if g in ker:
            continue
        if R.dim - fixed_subspace(R, [g]).dim < 2:
            bad.append(g)
    return bad


def isotropy_groups(R: RationalRep, include_origin: bool = False) -> list[Subgroup]:
    """Stabilizers of points of the unit sphere (and of the origin if asked)."""
    G = R.group
    seen = set()
    out = []
    if include_origin:
        out.append(Subgroup(G, frozenset(range(G.order))))
        seen.add(out[0].members)
    for K in all_subgroups(G):
        F = fixed_subspace(R, K)
        if F.dim == 0:
            continue
        S = pointwise_stabilizer(R, F)
        if S.members not in seen:
            seen.add(S.members)
            out.append(S)
    if not out:
        out.append(trivial(G))
    return sorted(out, key=Subgroup.sort_key)


__all__ = [
    "RationalRep",
    "FixedSpace",
    "SphereGeometry",
    "span",
    "fixed_subspace",
    "subspace_leq",
    "transform",
    "is_invariant",
    "pointwise_stabilizer",
    "sphere_sector_geometry",
    "codim_violations",
    "isotropy_groups",
]
