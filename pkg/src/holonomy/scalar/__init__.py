"""Exact arithmetic over Q, angle inputs and root-of-unity tests."""

from .angles import (
    ALGEBRAIC_COS,
    FLOAT,
    INFINITE,
    RATIONAL_PI,
    AngleSpec,
    parse_angle,
    recognize_angle,
    rotation_order_from_angle,
)
from .expr import as_fraction, parse_expr
from .poly import PolyQ, cyclotomic, euler_phi, gcd
from .unity import (
    AlgebraicReal,
    RootOfUnityResult,
    double_angle_poly,
    double_angle_reduce,
    eigenvalue_from_trace,
    in_S,
    is_root_of_unity,
    minpoly_from_cos,
    rational_trace_infinite_order,
    zeta_poly_from_trace_poly,
)

__all__ = [
    "ALGEBRAIC_COS",
    "FLOAT",
    "INFINITE",
    "RATIONAL_PI",
    "AlgebraicReal",
    "AngleSpec",
    "PolyQ",
    "RootOfUnityResult",
    "as_fraction",
    "cyclotomic",
    "double_angle_poly",
    "double_angle_reduce",
    "eigenvalue_from_trace",
    "euler_phi",
    "gcd",
    "in_S",
    "is_root_of_unity",
    "minpoly_from_cos",
    "parse_angle",
    "parse_expr",
    "rational_trace_infinite_order",
    "recognize_angle",
    "rotation_order_from_angle",
    "zeta_poly_from_trace_poly",
]
