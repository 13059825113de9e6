"""
h-sets with affine homeomorphisms c_N(z) = centre + M z on N_c = [-1, 1]^2.

The first coordinate of N_c is the exit (unstable) direction, the second
the entry (stable) direction.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from core.exceptions import ConfigurationError, SingularEnclosure
from ivl import Interval, verified_inverse
from section.eta import eta_matrix

UNIT_SQUARE = Interval([-1.0, -1.0], [1.0, 1.0])


def _swap_rows(x):
    return Interval(x.lo[::-1], x.hi[::-1], check=False)


def _swap_columns(M):
    return Interval(M.lo[:, ::-1], M.hi[:, ::-1], check=False)


def mirror_label(label):
    """Label of the S-image; S is an involution."""
    return label[1:] if label.startswith("S") else f"S{label}"


@dataclass(frozen=True)
class HSet:
    """Affine h-set; the support is the parallelogram c_N(N_c)."""

    center: Interval
    matrix: Interval
    label: str = "N"
    inverse: Interval = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        center = Interval.coerce(self.center).reshape(2)
        matrix = Interval.coerce(self.matrix).reshape(2, 2)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "matrix", matrix)
        if self.inverse is None:
            try:
                inverse = verified_inverse(matrix)
            except SingularEnclosure as exc:
                raise ConfigurationError(f"h-set {self.label}: c_N is not invertible") from exc
            object.__setattr__(self, "inverse", inverse)

    # constructors

    @classmethod
    def standard(cls, label="N"):
        return cls(Interval.zeros(2), Interval.identity(2), label)

    @classmethod
    def rectangle(cls, a, b, label="R"):
        """R_{a,b} = [0, b] x [a, b]."""
        a, b = Fraction(a), Fraction(b)
        if not 0 <= a < b:
            raise ConfigurationError(f"rectangle needs 0 <= a < b, got a={a}, b={b}")
        return cls(Interval.exact([b / 2, (a + b) / 2]), Interval.exact([[b / 2, 0], [0, (b - a) / 2]]), label)

    @classmethod
    def square(cls, a, b, label="Q"):
        """Q_{a,b} = [a, b] x [a, b]."""
        a, b = Fraction(a), Fraction(b)
        if not a < b:
            raise ConfigurationError(f"square needs a < b, got a={a}, b={b}")
        half = (b - a) / 2
        return cls(Interval.exact([(a + b) / 2] * 2), Interval.exact([[half, 0], [0, half]]), label)

    # maps

    def to_support(self, z):
        """c_N(z) for a 2-box or point of N_c."""
        return self.center + self.matrix @ Interval.coerce(z)

    def from_support(self, p):
        """c_N^-1(p)."""
        return self.inverse @ (Interval.coerce(p) - self.center)

    def support_box(self):
        return self.to_support(UNIT_SQUARE)

    def corners(self):
        return [self.to_support(Interval([x, y])) for x in (-1.0, 1.0) for y in (-1.0, 1.0)]

    # derived h-sets

    def transpose(self):
        """N^T with c_{N^T} = c_N o j."""
        return HSet(self.center, _swap_columns(self.matrix), f"{self.label}^T")

    def sheared(self, L, label=None):
        """eta_L o c_N."""
        eta = eta_matrix(L)
        return HSet(eta @ self.center, eta @ self.matrix, label or self.label)

    def shifted(self, offset, label=None):
        """offset + c_N; an interval offset stands for every point it contains."""
        return HSet(self.center + Interval.coerce(offset), self.matrix, label or self.label, inverse=self.inverse)

    def scaled(self, factor, label=None):
        """Same centre, support stretched by `factor` about it."""
        factor = Interval.exact(Fraction(repr(float(factor))))
        return HSet(self.center, factor * self.matrix, label or self.label)

    def mirrored(self, label=None):
        """j o c_N o j: coordinates of the S-image on the mirrored chart."""
        return HSet(
            _swap_rows(self.center),
            _swap_rows(_swap_columns(self.matrix)),
            label or mirror_label(self.label),
        )

    def commutes_with_swap(self):
        """c_N o j = j o c_N, compared endpoint by endpoint."""
        center, M = self.center, self.matrix
        left, right = _swap_columns(M), _swap_rows(M)
        return bool(
            center.lo[0] == center.lo[1]
            and center.hi[0] == center.hi[1]
            and np.array_equal(left.lo, right.lo)
            and np.array_equal(left.hi, right.hi)
        )

    def to_dict(self):
        return {"label": self.label, "center": self.center.to_pairs(), "matrix": self.matrix.to_pairs()}


@dataclass(frozen=True)
class HSetOnSection:
    """(N, psi): an h-set placed in the coordinates of a chart."""

    hset: HSet
    chart: object
    label: str = None

    def __post_init__(self):
        if self.label is None:
            object.__setattr__(self, "label", self.hset.label)

    def phase_box(self, z=UNIT_SQUARE, h=None):
        """Enclosure of psi(c_N(z)) in phase space."""
        return self.chart.psi(self.hset.to_support(z), h)

    def transpose(self):
        return HSetOnSection(self.hset.transpose(), self.chart, f"{self.label}^T")

    def mirror(self, chart=None, label=None):
        """S N = (N^T, S psi), realized as j c_N j on the chart S psi j."""
        label = label or mirror_label(self.label)
        return HSetOnSection(self.hset.mirrored(label), chart or self.chart.mirrored(), label)

    def shear(self, L, label=None):
        return HSetOnSection(self.hset.sheared(L, label), self.chart, label or self.label)

    def scaled(self, factor):
        return HSetOnSection(self.hset.scaled(factor), self.chart, self.label)

    def __repr__(self):
        return f"<HSetOnSection {self.label} on {self.chart!r}>"
