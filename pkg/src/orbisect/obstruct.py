"""Verdicts on the existence of nonvanishing vector fields.

A sector with nonzero Euler-Satake characteristic obstructs for every
choice of Gamma. Vanishing of all of them only proves existence when Gamma
covers the local groups, so without covering the answer is inconclusive.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .config import Caps, resolve
from .eqgeom import linear as lin
from .fingroup import (
    CoverResult,
    GammaPresentation,
    Subgroup,
    all_subgroups,
    covers_local_groups,
    min_generating_size,
)
from .sectors import (
    AFFINE,
    SIMPLICIAL,
    SPHERE,
    OrbifoldSpec,
    SectorTable,
    compute_sectors,
    geometry_for,
    open_sectors,
    simplicial_codim_violations,
)


class Status(str, enum.Enum):
    ADMITS = "ADMITS"
    OBSTRUCTED = "OBSTRUCTED"
    INCONCLUSIVE = "INCONCLUSIVE"
    HYPOTHESIS_VIOLATED = "HYPOTHESIS_VIOLATED"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self]


EXIT_CODES = {
    Status.ADMITS: 0,
    Status.OBSTRUCTED: 2,
    Status.INCONCLUSIVE: 3,
    Status.HYPOTHESIS_VIOLATED: 4,
}


@dataclass(frozen=True, eq=False)
class Verdict:
    status: Status
    witnesses: tuple[int, ...]
    covers: bool
    gamma_used: GammaPresentation
    notes: tuple[str, ...] = ()
    chi_es_values: dict[int, Fraction] = field(default_factory=dict)  # closed sectors only
    table: SectorTable | None = field(default=None, repr=False)
    cover_witness: Subgroup | None = field(default=None, repr=False)
    raw_status: Status | None = None

    def __post_init__(self):
        raw = self.raw_status or self.status
        if raw is Status.OBSTRUCTED and not self.witnesses:
            raise ValueError("an obstruction needs witnesses")
        if raw is Status.ADMITS and (self.witnesses or not self.covers):
            raise ValueError("ADMITS needs covering and no witnesses")
        if raw is Status.INCONCLUSIVE and (self.witnesses or self.covers):
            raise ValueError("INCONCLUSIVE means no witnesses and no covering")

    @property
    def exit_code(self) -> int:
        return self.status.exit_code


# --------------------------------------------------------------------------
# local groups
# --------------------------------------------------------------------------


def isotropy_groups(spec: OrbifoldSpec, removed: Iterable[tuple[int, ...]] | None = None) -> list[Subgroup]:
    """Distinct point stabilizers of the space (after regularization for complexes)."""
    if spec.model == SPHERE:
        return lin.isotropy_groups(spec.rep)
    if spec.model == AFFINE:
        return lin.isotropy_groups(spec.rep, include_origin=True)
    geo = geometry_for(spec)
    K, A = geo.complex, geo.action
    keep = np.ones(len(K), dtype=bool)
    if geo.double is not None:
        keep[:] = False
        keep[geo.double.original_ids] = True
    if removed is not None:
        keep[[K.index[s] for s in removed]] = False
    seen = {}
    G = spec.group
    perm = A.simplex_perm
    for i in np.flatnonzero(keep):
        members = frozenset(int(g) for g in np.flatnonzero(perm[:, i] == i))
        if members not in seen:
            seen[members] = Subgroup(G, members)
    return sorted(seen.values(), key=Subgroup.sort_key)


def auto_gamma(spec: OrbifoldSpec, caps: Caps | None = None, isotropies: Sequence[Subgroup] | None = None) -> GammaPresentation:
    """Free group on as many generators as the worst local subgroup needs."""
    caps = resolve(caps)
    isos = isotropy_groups(spec) if isotropies is None else isotropies
    d = 0
    for K in all_subgroups(spec.group, caps):
        if any(K <= H for H in isos):
            d = max(d, min_generating_size(K))
    return GammaPresentation.free(d)


# --------------------------------------------------------------------------
# verdicts
# --------------------------------------------------------------------------


def _decide(table: SectorTable, gamma, cover: CoverResult, violations: list[int], extra_notes=()) -> Verdict:
    closed = [s for s in table.sectors if s.is_closed]
    values = {s.sector_id: s.chi_es for s in closed}
    witnesses = tuple(s.sector_id for s in closed if s.chi_es != 0)
    notes = list(table.notes) + list(extra_notes)
    if witnesses:
        status = Status.OBSTRUCTED
    elif cover.covers:
        status = Status.ADMITS
    else:
        status = Status.INCONCLUSIVE
        if cover.witness is not None:
            notes.append(f"Gamma does not cover a local subgroup of order {cover.witness.order}")
    raw = None
    if violations:
        raw = status
        G = table.spec.group
        notes.append(
            f"codimension hypothesis fails for {len(violations)} group elements "
            f"(first: {G.describe(violations[0])}); raw verdict {status.value}"
        )
        status = Status.HYPOTHESIS_VIOLATED
    return Verdict(
        status=status,
        witnesses=witnesses,
        covers=cover.covers,
        gamma_used=gamma,
        notes=tuple(notes),
        chi_es_values=values,
        table=table,
        cover_witness=cover.witness,
        raw_status=raw,
    )


def _gamma_or_auto(spec, gamma, caps, isotropies):
    if gamma is None or gamma == "auto":
        return auto_gamma(spec, caps, isotropies)
    return gamma


def verdict_closed(spec: OrbifoldSpec, gamma: GammaPresentation | str | None = None, caps: Caps | None = None) -> Verdict:
    if spec.has_boundary:
        raise ValueError("input has boundary; use verdict_with_boundary")
    if spec.model == AFFINE:
        raise ValueError("the affine model is not a closed orbifold")
    caps = resolve(caps)
    isos = isotropy_groups(spec)
    gamma = _gamma_or_auto(spec, gamma, caps, isos)
    table = compute_sectors(spec, gamma, caps)
    cover = covers_local_groups(gamma, isos, caps)
    return _decide(table, gamma, cover, spec.codim_violations())


def verdict_with_boundary(spec: OrbifoldSpec, gamma: GammaPresentation | str | None = None, caps: Caps | None = None) -> Verdict:
    """Zero test on the sectors of the double that stay away from the boundary."""
    if not spec.has_boundary:
        raise ValueError("input has no boundary marked")
    caps = resolve(caps)
    isos = isotropy_groups(spec)
    gamma = _gamma_or_auto(spec, gamma, caps, isos)
    table = compute_sectors(spec, gamma, caps)
    cover = covers_local_groups(gamma, isos, caps)
    return _decide(table, gamma, cover, spec.codim_violations())


def verdict_open(
    ambient: OrbifoldSpec,
    removed: Iterable[Sequence[int]],
    gamma: GammaPresentation | str | None = None,
    caps: Caps | None = None,
) -> Verdict:
    """Complement of a closed invariant subcomplex in a closed simplicial orbifold."""
    if ambient.model != SIMPLICIAL:
        raise ValueError("open suborbifolds need a simplicial ambient orbifold")
    if ambient.has_boundary:
        raise ValueError("the ambient orbifold must be closed")
    caps = resolve(caps)
    removed = [tuple(s) for s in removed]
    lifted = ambient.regularization.lift(_closure_of(removed, ambient))
    isos = isotropy_groups(ambient, removed=lifted)
    gamma = _gamma_or_auto(ambient, gamma, caps, isos)
    table = open_sectors(ambient, removed, gamma, caps)
    cover = covers_local_groups(gamma, isos, caps)
    geo = table.geometry
    return _decide(table, gamma, cover, simplicial_codim_violations(geo.complex, geo.action))


def _closure_of(removed, spec):
    from .eqgeom.simplicial import _closure

    simp = _closure(removed)
    missing = [s for s in simp if s not in spec.complex.index]
    if missing:
        raise ValueError(f"removed simplex {list(min(missing))} is not in the complex")
    return simp


def verdict(spec: OrbifoldSpec, gamma=None, caps: Caps | None = None) -> Verdict:
    """Closed or with-boundary verdict, whichever applies."""
    if spec.has_boundary:
        return verdict_with_boundary(spec, gamma, caps)
    return verdict_closed(spec, gamma, caps)


__all__ = [
    "Status",
    "Verdict",
    "EXIT_CODES",
    "isotropy_groups",
    "auto_gamma",
    "verdict_closed",
    "verdict_with_boundary",
    "verdict_open",
    "verdict",
]
