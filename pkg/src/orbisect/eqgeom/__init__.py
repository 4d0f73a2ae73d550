"""Geometric backends: equivariant simplicial complexes and rational representations."""
from .linear import (
    FixedSpace,
    RationalRep,
    SphereGeometry,
    codim_violations,
    fixed_subspace,
    isotropy_groups,
    sphere_sector_geometry,
    subspace_leq,
)
from .simplicial import (
    Double,
    NotRegularError,
    QuotientComplex,
    Regularization,
    SimplicialAction,
    SimplicialComplex,
    Subdivision,
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

__all__ = [
    "FixedSpace",
    "RationalRep",
    "SphereGeometry",
    "codim_violations",
    "fixed_subspace",
    "isotropy_groups",
    "sphere_sector_geometry",
    "subspace_leq",
    "Double",
    "NotRegularError",
    "QuotientComplex",
    "Regularization",
    "SimplicialAction",
    "SimplicialComplex",
    "Subdivision",
    "barycentric_subdivision",
    "connected_components",
    "double",
    "euler_characteristic",
    "fixed_subcomplex",
    "is_regular",
    "join",
    "quotient_complex",
    "regularize",
]
