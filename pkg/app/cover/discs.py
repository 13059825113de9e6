"""
The collision segment {z1 + z2 = 0} in N_0 as a horizontal and a vertical disc.

b_h(x) = (x, -x) is moved to (x, 0) by h(s, x) = (x, -(1 - s) x); its
ends stay on the exit edges {|z1| = 1}. b_v(y) = (-y, y) is moved to
(0, y) by h(s, y) = (-(1 - s) y, y); its ends stay on {|z2| = 1}.
"""

import logging

import numpy as np

from core.exceptions import ConfigurationError, VerificationFailure
from cover.certificates import Certificate, CertificateKind
from ivl import Interval
from model.pcr3bp import collision_residual

logger = logging.getLogger(__name__)

HOMOTOPY_PIECES = 16
SAMPLE_POINTS = 33


def _is_standard(hset):
    return (
        np.array_equal(hset.center.lo, [0.0, 0.0])
        and np.array_equal(hset.center.hi, [0.0, 0.0])
        and np.array_equal(hset.matrix.lo, np.eye(2))
        and np.array_equal(hset.matrix.hi, np.eye(2))
    )


def _check_homotopy(moving, fixed_axis, label):
    """Ends x = +-1 of h(s, .) stay on the edges |z_fixed_axis| = 1 and inside N_c for every s."""
    ticks = np.linspace(0.0, 1.0, HOMOTOPY_PIECES + 1)
    for lo, hi in zip(ticks[:-1], ticks[1:]):
        S = Interval(lo, hi)
        for end in (-1.0, 1.0):
            point = moving(S, end)
            edge = point[fixed_axis]
            other = point[1 - fixed_axis]
            if not (float(edge.lo) == float(edge.hi) == end):
                raise VerificationFailure(f"{label} homotopy leaves the edge at s in {S!r}")
            if not other.subset(Interval(-1.0, 1.0)):
                raise VerificationFailure(f"{label} homotopy leaves N_c at s in {S!r}")


def _horizontal(S, x):
    return Interval.stack([Interval(x), -(1 - S) * x])


def _vertical(S, y):
    return Interval.stack([-(1 - S) * y, Interval(y)])


def collision_disc(N0, h=None):
    """Certify the collision segment of N_0 on the psi_0 chart as both disc types."""
    if not _is_standard(N0.hset):
        raise ConfigurationError(f"{N0.label} must be the standard square for the collision disc")

    _check_homotopy(_horizontal, 0, "horizontal")
    _check_homotopy(_vertical, 1, "vertical")

    worst = 0.0
    for t in np.linspace(-1.0, 1.0, SAMPLE_POINTS):
        residual = Interval.coerce(collision_residual(N0.phase_box(Interval([t, -t]), h)))
        if not bool(np.all(residual.contains_zero())):
            raise VerificationFailure(f"psi(({t}, {-t})) is not a collision state: {residual!r}")
        worst = max(worst, residual.max_width())

    logger.info("collision segment of %s is a horizontal and a vertical disc", N0.label)
    return Certificate(
        relation_id=f"disc:{N0.label}",
        kind=CertificateKind.DISC,
        source=N0.label,
        target=N0.label,
        provenance="construction",
        details={
            "segment": "z1 + z2 = 0",
            "horizontal": "h(s, x) = (x, -(1 - s) x)",
            "vertical": "h(s, y) = (-(1 - s) y, y)",
            "samples": SAMPLE_POINTS,
            "residual_width": worst,
        },
    )
