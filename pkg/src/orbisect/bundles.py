"""Equivariant vector bundles over a linear model and their sector bundles.

The total space is the product of the base representation space with the
fiber, the group acting by the block sum. Over a sector with representative
``phi`` the induced bundle has fiber ``W^{Im phi}``, and the centralizer of
the image acts on both the sector support ``V^{Im phi}`` and that fiber.
The bundle is good where every element acting trivially on the base also
acts trivially on the fiber.
"""
from __future__ import annotations

from dataclasses import dataclass

from .eqgeom.linear import RationalRep, fixed_subspace
from .fingroup import Subgroup, same_group
from .linalg import matvec
from .sectors import SIMPLICIAL, SectorTable


@dataclass(frozen=True, eq=False)
class EquivariantBundle:
    base: RationalRep
    fiber: RationalRep

    def __post_init__(self):
        if self.base.group is not self.fiber.group and not same_group(self.base.group, self.fiber.group):
            raise ValueError("base and fiber representations are over different groups")

    @property
    def group(self):
        return self.base.group

    @property
    def rank(self) -> int:
        return self.fiber.dim


@dataclass(frozen=True)
class SectorBundleData:
    sector_id: int
    fiber_rank: int
    base_kernel: Subgroup
    fiber_kernel: Subgroup
    good: bool
    oriented: bool = True

    @property
    def total_kernel(self) -> Subgroup:
        return Subgroup(self.base_kernel.parent, self.base_kernel.members & self.fiber_kernel.members)


def _pointwise_kernel(R: RationalRep, C: Subgroup, basis) -> Subgroup:
    return Subgroup(C.parent, frozenset(c for c in C.members if all(matvec(R(c), v) == v for v in basis)))


def sector_bundle_data(bundle: EquivariantBundle, table: SectorTable) -> list[SectorBundleData]:
    spec = table.spec
    if spec.model == SIMPLICIAL:
        raise ValueError("bundle data needs a table on the sphere or affine model of the base")
    if not same_group(spec.group, bundle.group):
        raise ValueError("the table was computed for a different group")
    if spec.rep.matrices != bundle.base.matrices:
        raise ValueError("the table was computed for a different base representation")
    out = []
    for s in table.sectors:
        W = fixed_subspace(bundle.fiber, s.image)
        # the centralizer acts on the support through its span
        bk = _pointwise_kernel(bundle.base, s.centralizer, s.support.space.basis)
        fk = _pointwise_kernel(bundle.fiber, s.centralizer, W.basis)
        out.append(SectorBundleData(s.sector_id, W.dim, bk, fk, bk.members <= fk.members))
    return out


def is_good(bundle: EquivariantBundle) -> bool:
    """Every element acting trivially on the base acts trivially on the fiber."""
    return bundle.base.kernel.members <= bundle.fiber.kernel.members


__all__ = ["EquivariantBundle", "SectorBundleData", "sector_bundle_data", "is_good"]
