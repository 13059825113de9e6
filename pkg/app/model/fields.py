"""
Vector fields consumed by the integrators.

A field is called with a state in any supported number type and returns the
derivative in the same type. `evaluate` is the float/complex shortcut used
by the non-rigorous solver.
"""

import numpy as np

from model import pcr3bp
from model.arith import assemble, split
from model.params import EARTH_MOON


class VectorField:
    dimension = 4
    name = "field"

    def __call__(self, w):
        raise NotImplementedError

    def evaluate(self, w):
        w = np.asarray(w)
        dtype = np.complex128 if np.iscomplexobj(w) else np.float64
        return np.asarray(self(w), dtype=dtype)

    def jacobian(self, w, step=1e-30):
        """Float Jacobian by complex-step differentiation."""
        w = np.asarray(w, dtype=np.float64)
        n = w.size
        J = np.empty((n, n))
        for j in range(n):
            perturbed = w.astype(np.complex128)
            perturbed[j] += 1j * step
            J[:, j] = np.imag(self.evaluate(perturbed)) / step
        return J

    def reversed(self):
        return ReversedField(self)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class ReversedField(VectorField):
    """Same orbits traversed backwards: w' = -f(w)."""

    def __init__(self, base):
        self.base = base
        self.dimension = base.dimension
        self.name = f"-{base.name}"

    def __call__(self, w):
        return assemble([-c for c in split(self.base(w), self.dimension)])

    def reversed(self):
        return self.base


class RegularizedField(VectorField):
    """Levi-Civita field at a fixed energy h."""

    name = "regularized"

    def __init__(self, h, params=EARTH_MOON, primary=2):
        self.h = h
        self.params = params
        self.primary = primary

    def __call__(self, w):
        return pcr3bp.vector_field_reg(w, self.h, self.params, self.primary)


class ExtendedRegularizedField(VectorField):
    """Levi-Civita field on (u, v, pu, pv, h) with h constant along orbits.

    Used by the rigorous integrator so an energy interval is carried inside
    the state and derivatives with respect to h come for free.
    """

    dimension = 5
    name = "regularized-h"

    def __init__(self, params=EARTH_MOON, primary=2):
        self.params = params
        self.primary = primary

    def __call__(self, w):
        parts = split(w, 5)
        derivative = split(
            pcr3bp.vector_field_reg(parts[:4], parts[4], self.params, self.primary)
        )
        return assemble(list(derivative) + [0 * parts[4]])


class StandardField(VectorField):
    name = "standard"

    def __init__(self, params=EARTH_MOON):
        self.params = params

    def __call__(self, w):
        return pcr3bp.vector_field_std(w, self.params)


class HarmonicField(VectorField):
    """x' = y, y' = -x."""

    dimension = 2
    name = "harmonic"

    def __call__(self, w):
        x, y = split(w, 2)
        return assemble([y, -x])


class ConstantField(VectorField):
    name = "constant"

    def __init__(self, velocity):
        self.velocity = np.asarray(velocity, dtype=np.float64)
        self.dimension = self.velocity.size

    def __call__(self, w):
        parts = split(w, self.dimension)
        return assemble([0 * p + float(c) for p, c in zip(parts, self.velocity)])


class LinearField(VectorField):
    name = "linear"

    def __init__(self, matrix):
        self.matrix = np.asarray(matrix, dtype=np.float64)
        self.dimension = self.matrix.shape[0]

    def __call__(self, w):
        parts = split(w, self.dimension)
        rows = []
        for row in self.matrix:
            acc = 0 * parts[0]
            for coeff, p in zip(row, parts):
                if coeff:
                    acc = acc + float(coeff) * p
            rows.append(acc)
        return assemble(rows)
