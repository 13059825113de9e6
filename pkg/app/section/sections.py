"""
Poincare sections given by affine functions g(w) = <n, w - base>.
"""

import numpy as np

from core.exceptions import ConfigurationError
from ivl import Interval
from model.pcr3bp import symmetry_S


class Section:
    """Hyperplane {g = 0} in the first four state coordinates."""

    normal = None

    def value(self, w):
        raise NotImplementedError

    def value_enclosure(self, box):
        return self.value(Interval.coerce(box))

    def gradient(self, dimension=4):
        grad = np.zeros(dimension)
        k = min(dimension, self.normal.size)
        grad[:k] = self.normal[:k]
        return grad

    def mirrored(self):
        raise NotImplementedError

    def sharpen(self, box):
        """Tighten a box known to lie on the section."""
        return box


class AffineSection(Section):
    def __init__(self, base, normal):
        self.base = np.asarray(base, dtype=np.float64)[:4]
        self.normal = np.asarray(normal, dtype=np.float64)[:4]
        if not np.any(self.normal):
            raise ConfigurationError("section normal must be nonzero")

    def value(self, w):
        if isinstance(w, Interval):
            return Interval(self.normal) @ (w[:4] - self.base)
        w = np.asarray(w)
        return self.normal @ (w[:4] - self.base)

    def mirrored(self):
        return AffineSection(symmetry_S(self.base), symmetry_S(self.normal))

    def __repr__(self):
        return f"AffineSection(base={self.base.tolist()}, normal={self.normal.tolist()})"


class CoordinateSection(Section):
    """{w[index] = value}; {v = 0} is the section through the collision circle."""

    def __init__(self, index, value=0.0):
        self.index = index
        self.level = float(value)
        self.normal = np.zeros(4)
        self.normal[index] = 1.0

    def value(self, w):
        return w[self.index] - self.level

    def mirrored(self):
        if self.index in (1, 2):
            return CoordinateSection(self.index, -self.level)
        return CoordinateSection(self.index, self.level)

    def sharpen(self, box):
        return box.replace(self.index, self.level)

    def __repr__(self):
        return f"CoordinateSection(index={self.index}, value={self.level})"
