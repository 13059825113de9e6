"""
Mass parameters of the circular restricted three-body problem.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# p_v of w0 as printed in the chart tables
TABLE_W0_PV = 2.81112771399


@dataclass(frozen=True)
class MassParams:
    """Masses mu1, mu2 of the primaries at x1 = mu2 and x2 = -mu1."""

    mu1: Fraction
    mu2: Fraction

    def __post_init__(self):
        if self.mu1 <= 0 or self.mu2 <= 0:
            raise ConfigurationError("masses must be positive")
        if self.mu1 + self.mu2 != 1:
            raise ConfigurationError("masses must sum to one")

    @classmethod
    def from_mu(cls, mu):
        mu = Fraction(mu)
        return cls(mu, 1 - mu)

    @property
    def x1(self):
        return self.mu2

    @property
    def x2(self):
        return -self.mu1

    def mu(self, primary):
        return self.mu1 if primary == 1 else self.mu2

    def position(self, primary):
        return self.x1 if primary == 1 else self.x2

    @staticmethod
    def other(primary):
        return 3 - primary

    @staticmethod
    def epsilon(primary):
        """Sign of the shifted unregularized primary: +1 for i=1, -1 for i=2."""
        return 1 if primary == 1 else -1


EARTH_MOON = MassParams.from_mu(Fraction(1, 82))


def check_mass_convention(params=EARTH_MOON, pv=TABLE_W0_PV, tol=1e-10):
    """Confirm the regularized primary is the one whose collision circle holds w0."""
    expected = math.sqrt(8 * float(params.mu2))
    if abs(expected - pv) > tol:
        raise ConfigurationError(
            f"mass convention mismatch: sqrt(8 mu2) = {expected!r}, table p_v = {pv!r}"
        )
    logger.debug("mass convention verified: sqrt(8 mu2) = %.12f", expected)
    return expected
