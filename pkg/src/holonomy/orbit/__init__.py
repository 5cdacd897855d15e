"""Words, orbit enumeration, sphere coverage and word approximation."""

from .approx import ApproxBudget, ApproxResult, Approximator, approximate_element
from .enumerate import (
    GENERIC_POINT,
    ElementTable,
    EmptyPool,
    OrbitReport,
    PlaneConfinement,
    SmallRotationPool,
    circle_covering_radius,
    covering_radius,
    enumerate_elements,
    enumerate_orbit,
    fibonacci_sphere,
    harvest_small_rotations,
    invariant_axis,
    plane_confinement,
    write_points_csv,
    write_radius_csv,
)
from .words import Word, words_up_to

__all__ = [
    "GENERIC_POINT",
    "ApproxBudget",
    "ApproxResult",
    "Approximator",
    "ElementTable",
    "EmptyPool",
    "OrbitReport",
    "PlaneConfinement",
    "SmallRotationPool",
    "Word",
    "approximate_element",
    "circle_covering_radius",
    "covering_radius",
    "enumerate_elements",
    "enumerate_orbit",
    "fibonacci_sphere",
    "harvest_small_rotations",
    "invariant_axis",
    "plane_confinement",
    "words_up_to",
    "write_points_csv",
    "write_radius_csv",
]
