"""
Interval Newton root verification.
"""

from rootfind.newton import (
    NewtonOutcome,
    NewtonStatus,
    interval_newton,
    interval_newton_parametrized,
    newton_image,
)

__all__ = [
    "NewtonOutcome",
    "NewtonStatus",
    "interval_newton",
    "interval_newton_parametrized",
    "newton_image",
]
