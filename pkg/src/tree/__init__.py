from src.tree.groups import (
    CompactGroupSpec,
    coset_representatives,
    is_fixed,
    orbit,
    orbit_by_cosets,
    required_level,
)
from src.tree.hull import (
    FixedPoint,
    MembershipResult,
    convex_hull,
    default_window,
    fixed_locus_window,
    fixed_point_in_hull,
    y_membership,
)
from src.tree.lattice import (
    LatticeClass,
    act,
    apartment_projection,
    apartment_vertex,
    ball,
    canonicalize,
    distance,
    geodesic,
    neighbors,
    standard_vertex,
)

__all__ = [
    "CompactGroupSpec",
    "FixedPoint",
    "LatticeClass",
    "MembershipResult",
    "act",
    "apartment_projection",
    "apartment_vertex",
    "ball",
    "canonicalize",
    "convex_hull",
    "coset_representatives",
    "default_window",
    "distance",
    "fixed_locus_window",
    "fixed_point_in_hull",
    "geodesic",
    "is_fixed",
    "neighbors",
    "orbit",
    "orbit_by_cosets",
    "required_level",
    "standard_vertex",
    "y_membership",
]
