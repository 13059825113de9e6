"""
The approach family R_{k+1} = eta_L R_{a_k, b_k}, Q_{k+1} = eta_L Q_{a_k, b_k}
with a_k = beta^k a and b_k = (c + rho)^k b.

With anchors q_j (one per chart, in z coordinates) every level on chart
j = k mod len(anchors) is moved to eta_L (q_j + R_{a_k, b_k}).
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from core.exceptions import BoundsViolated, ConfigurationError
from cover.hsets import UNIT_SQUARE, HSet
from ivl import Interval
from section.eta import eta_matrix


@dataclass(frozen=True)
class ApproachLevel:
    k: int
    a: Fraction
    b: Fraction
    rectangle: HSet
    square: HSet
    anchor: Interval = None

    @property
    def extent(self):
        """Outer bound b_k of both supports before shearing."""
        return self.b


def _check_anchors(anchors, b):
    """q + [0, b]^2 inside N_c for every anchor, so the cone bounds hold along the sets."""
    reach = Interval(np.zeros(2), Interval.exact([b, b]).hi)
    for j, q in enumerate(anchors):
        if not (q + reach).interior(UNIT_SQUARE):
            raise BoundsViolated("anchored family", f"chart {j}: {q!r} + [0, {b}]^2 leaves N_c")


def approach_family(bounds, a, b, L, k_max, anchors=None):
    """Levels k = 1..k_max; each R_k covers R_{k+1} and Q_{k+1} under g once `bounds` hold."""
    a, b = Fraction(a), Fraction(b)
    if not 0 < a < b < 1:
        raise ConfigurationError(f"approach family needs 0 < a < b < 1, got a={a}, b={b}")
    shifts = None
    if anchors is not None:
        anchors = [Interval.coerce(q) for q in anchors]
        _check_anchors(anchors, b)
        shifts = [eta_matrix(L) @ q for q in anchors]
    levels = []
    a_k, b_k = a, b
    for k in range(1, k_max + 1):
        if not a_k < b_k:
            raise ConfigurationError(f"approach family degenerates at k={k}: a_k={a_k} >= b_k={b_k}")
        rectangle = HSet.rectangle(a_k, b_k, f"R{k}").sheared(L)
        square = HSet.square(a_k, b_k, f"Q{k}").sheared(L)
        anchor = None
        if shifts:
            j = k % len(shifts)
            rectangle, square, anchor = rectangle.shifted(shifts[j]), square.shifted(shifts[j]), anchors[j]
        levels.append(ApproachLevel(k=k, a=a_k, b=b_k, rectangle=rectangle, square=square, anchor=anchor))
        a_k, b_k = bounds.beta * a_k, bounds.decay * b_k
    return levels


def excludes_collision_line(hset):
    """z1 + z2 > 0 on the whole support, so it misses the line z1 + z2 = 0."""
    coordinate_sum = hset.center.sum() + (hset.matrix.sum(axis=0) * UNIT_SQUARE).sum()
    return float(coordinate_sum.lo) > 0
