"""
Shear eta_L(z) = (z1 - L z2, z2 - L z1) / (1 + L) used to tilt the approach sets.
"""

from fractions import Fraction

import numpy as np

from core.exceptions import ConfigurationError
from ivl import Interval


def exact_shear(L):
    """Shear parameter as a rational; floats are read through their decimal repr."""
    L = Fraction(repr(L)) if isinstance(L, float) else Fraction(L)
    if not -1 < L < 1:
        raise ConfigurationError(f"shear must satisfy |L| < 1, got {L}")
    return L


def eta_matrix(L):
    """Enclosure of (1/(1+L)) [[1, -L], [-L, 1]]."""
    L = exact_shear(L)
    scale = 1 / (1 + L)
    return Interval.exact([[scale, -L * scale], [-L * scale, scale]])


def eta_shear(z, L, inverse=False):
    """Image of a point or 2-box under eta_L, or under eta_L^-1 = eta_{-L}."""
    L = exact_shear(L)
    M = eta_matrix(-L if inverse else L)
    if isinstance(z, Interval):
        return M @ z
    return M.mid() @ np.asarray(z, dtype=np.float64)
