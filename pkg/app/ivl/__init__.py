"""
Outward-rounded interval arithmetic.
"""

from ivl.interval import Interval, IntervalMatrix, IntervalVector, hull, isqrt
from ivl.linalg import linear_solve_enclosure, orthonormal_frame, verified_inverse

__all__ = [
    "Interval",
    "IntervalMatrix",
    "IntervalVector",
    "hull",
    "isqrt",
    "linear_solve_enclosure",
    "orthonormal_frame",
    "verified_inverse",
]
