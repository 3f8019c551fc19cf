from hyperwalk.geometry import DiscPoint, cayley_to_disc, horocycle_orbit, mobius_apply
from hyperwalk.walk import (
    A1,
    A2,
    HOROCYCLE_TABLE,
    PATH_POINT_CAP,
    TrajectoryPoint,
    WalkSpec,
    closed_form_limit,
    conjugate_check,
    geodesic_limit_point,
    path_indices,
    reciprocal_rate_limit,
    trajectory,
    walk_product,
    walk_sequence,
)

__all__ = [
    "A1",
    "A2",
    "HOROCYCLE_TABLE",
    "PATH_POINT_CAP",
    "DiscPoint",
    "TrajectoryPoint",
    "WalkSpec",
    "cayley_to_disc",
    "closed_form_limit",
    "conjugate_check",
    "geodesic_limit_point",
    "horocycle_orbit",
    "mobius_apply",
    "path_indices",
    "reciprocal_rate_limit",
    "trajectory",
    "walk_product",
    "walk_sequence",
]
