"""
Interval Newton operator, plain and parametrized.
"""

import enum
import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import IntervalError, SingularEnclosure
from ivl import Interval, linear_solve_enclosure

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 30


class NewtonStatus(str, enum.Enum):
    VERIFIED = "verified"
    NO_CONCLUSION = "no_conclusion"
    PROVED_EMPTY = "proved_empty"


@dataclass(frozen=True)
class NewtonOutcome:
    """Result of an interval Newton run."""

    status: NewtonStatus
    enclosure: Interval = None
    iterations: int = 0
    diagnostic: str = ""

    @property
    def verified(self):
        return self.status is NewtonStatus.VERIFIED


def _as_vector(value):
    value = Interval.coerce(value)
    return value.reshape(1) if value.ndim == 0 else value


def _as_matrix(value, n):
    value = Interval.coerce(value)
    return value.reshape(n, n)


def newton_image(F, DF, x, X):
    """N(x, X) = x - [DF(X)]^-1 F(x)."""
    X = _as_vector(X)
    n = X.shape[0]
    x = Interval(np.asarray(x, dtype=np.float64).reshape(n))
    fx = _as_vector(F(x))
    return x - linear_solve_enclosure(_as_matrix(DF(X), n), fx)


def _stagnated(old, new):
    """Width did not shrink by more than two ulps in any component."""
    slack = 2 * np.spacing(np.maximum(np.abs(old.lo), np.abs(old.hi)))
    return bool(np.all(old.width() - new.width() <= 2 * slack))


def interval_newton(F, DF, X, x=None, max_iterations=MAX_ITERATIONS):
    """Verify a unique zero of F in X.

    F maps a point box to an interval vector, DF maps X to an interval
    matrix. Verified requires N(x, X) in the interior of X; the enclosure
    is then refined by X <- N(mid X, X) & X.
    """
    X = _as_vector(X)
    if x is None:
        x = X.mid()
    x = np.asarray(x, dtype=np.float64).reshape(X.shape)
    if not np.all((X.lo < x) & (x < X.hi)) and X.max_width() > 0:
        x = X.mid()

    verified = None
    current = X
    for iteration in range(1, max_iterations + 1):
        try:
            image = newton_image(F, DF, x, current)
        except SingularEnclosure as exc:
            if verified is not None:
                break
            return NewtonOutcome(NewtonStatus.NO_CONCLUSION, None, iteration, str(exc))
        except IntervalError as exc:
            if verified is not None:
                break
            return NewtonOutcome(
                NewtonStatus.NO_CONCLUSION, None, iteration, f"evaluation failed: {exc}"
            )

        narrowed = image.intersect(current)
        if narrowed is None:
            if verified is not None:
                break
            logger.debug("Newton image disjoint from box after %d steps", iteration)
            return NewtonOutcome(
                NewtonStatus.PROVED_EMPTY, None, iteration, "N(x, X) and X are disjoint"
            )

        if verified is None and image.interior(current):
            verified = image
            logger.debug("zero verified at step %d, width %.3e", iteration, image.max_width())
        elif verified is not None:
            if _stagnated(verified, narrowed):
                verified = narrowed
                break
            verified = narrowed
        elif _stagnated(current, narrowed):
            return NewtonOutcome(
                NewtonStatus.NO_CONCLUSION,
                None,
                iteration,
                "contraction stagnated without interior containment",
            )

        current = verified if verified is not None else narrowed
        x = current.mid()

    if verified is None:
        return NewtonOutcome(
            NewtonStatus.NO_CONCLUSION, None, max_iterations, "iteration budget exhausted"
        )
    return NewtonOutcome(NewtonStatus.VERIFIED, verified, iteration)


def interval_newton_parametrized(F, DxF, I, X, x=None, max_iterations=MAX_ITERATIONS):
    """Verify a C^1 branch x*(lambda) of zeros of F(lambda, .) for all lambda in I.

    F(I, x) and DxF(I, X) take the whole parameter box; I may be a vector.
    """
    I = Interval.coerce(I)
    return interval_newton(
        lambda point: F(I, point),
        lambda box: DxF(I, box),
        X,
        x=x,
        max_iterations=max_iterations,
    )
