"""
Validated integration with a Lohner-type doubleton representation.

Sets are kept as x_hat + C r0 + B r with an orthonormal frame B, which
controls the wrapping effect over long legs. The derivative of the flow
with respect to the initial box is propagated alongside.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from core.exceptions import (
    BlowUp,
    DivisionByZeroInterval,
    DomainError,
    IntegrationError,
    SingularityHit,
    StepUnderflow,
)
from flow.config import IntegratorConfig
from flow.taylor import TaylorTape
from flow.tube import TubeEnclosure, TubeSegment
from ivl import Interval, orthonormal_frame, verified_inverse
from ivl import rounding

logger = logging.getLogger(__name__)

APRIORI_ATTEMPTS = 4


@dataclass(frozen=True)
class DoubletonSet:
    center: np.ndarray
    C: np.ndarray
    r0: Interval
    B: np.ndarray
    r: Interval

    @classmethod
    def from_box(cls, box):
        box = Interval.coerce(box)
        n = box.shape[0]
        center = box.mid()
        return cls(center, np.eye(n), box - center, np.eye(n), Interval.zeros(n))

    def hull(self):
        return Interval(self.center) + self.C @ self.r0 + self.B @ self.r


@dataclass(frozen=True)
class FlowState:
    """Set, derivative and elapsed time; `clock` is the exact lower end of `time`."""

    set: DoubletonSet
    derivative: Interval
    clock: Fraction
    time: Interval

    @classmethod
    def initial(cls, box, want_derivative=False):
        box = Interval.coerce(box)
        derivative = Interval.identity(box.shape[0]) if want_derivative else None
        return cls(DoubletonSet.from_box(box), derivative, Fraction(0), Interval(0.0))

    def hull(self):
        return self.set.hull()


@dataclass(frozen=True)
class StepRecord:
    state: FlowState
    step: Interval
    segment: TubeSegment
    jacobian: Interval


@dataclass
class FlowResult:
    state: object
    derivative: object = None
    elapsed: object = None
    tube: TubeEnclosure = None
    steps: int = 0
    trajectory: tuple = None
    final: FlowState = None
    events: tuple = None


def _powers(T, n):
    out = [Interval(1.0)]
    for _ in range(n):
        out.append(out[-1] * T)
    return out


def _taylor_sum(powers, coeffs, upto):
    total = coeffs[0]
    for k in range(1, upto + 1):
        total = total + powers[k] * coeffs[k]
    return total


class LohnerIntegrator:
    def __init__(self, field, config=None):
        self.field = field
        self.config = config or IntegratorConfig.from_settings()
        self.order = self.config.order
        self.tape = TaylorTape(field)

    def series(self, box, gradient=False):
        try:
            return self.tape.series(box, self.order, gradient)
        except (DivisionByZeroInterval, DomainError) as exc:
            self._raise_singular(box, exc)

    def _raise_singular(self, box, exc):
        """Re-raise a tape failure as the model's own singularity error when it has one."""
        try:
            self.field(Interval.coerce(box))
        except SingularityHit as hit:
            raise hit from exc
        except (DivisionByZeroInterval, DomainError):
            pass
        raise SingularityHit(f"{self.field}: {exc}") from exc

    def suggest_step(self, series):
        p = self.order
        tol = self.config.tol
        candidates = [self.config.max_step]
        for k in (p, p - 1):
            size = float(np.max(series.coeffs[k].mag()))
            if size > 0:
                candidates.append((tol / size) ** (1.0 / k))
        return max(min(0.5 * min(candidates), self.config.max_step), self.config.min_step)

    def enclose(self, box, series, T):
        """A-priori enclosure of all solutions from `box` over times in [0, T.hi], or None."""
        p = self.order
        span = Interval(0.0, T.hi)
        powers = _powers(span, p + 1)
        base = _taylor_sum(powers, series.coeffs, p)
        Z = base.inflate(absolute=10 * self.config.tol, relative=0.1)
        for _ in range(APRIORI_ATTEMPTS):
            try:
                remainder = self.tape.series(Z, p).coeffs[p + 1]
            except (DivisionByZeroInterval, DomainError):
                return None
            trial = base + powers[p + 1] * remainder
            if trial.is_bounded() and trial.interior(Z):
                return trial
            Z = Z.hull(trial).inflate(absolute=10 * self.config.tol, relative=0.5)
        return None

    def _variational_bound(self, Df, T):
        """Entrywise bound of V(t) over [0, T] for V' = A V, V(0) = I, A in Df."""
        n = Df.shape[0]
        lipschitz = float(np.max(rounding.sum_up(Df.mag(), axis=1)))
        exponent = rounding.mul(lipschitz, float(T.hi))[1]
        growth = float(np.expm1(exponent)) * (1 + 16 * rounding.EPS) + 1e-300
        if not np.isfinite(growth):
            raise BlowUp("variational bound overflow")
        return Interval(np.eye(n) - growth, np.eye(n) + growth)

    def step(self, state, limit=None, span=None):
        """One validated step of length min(suggested, limit), or an interval step [0, span]."""
        cfg = self.config
        p = self.order
        X = state.hull()
        sx = self.series(X, gradient=True)

        if span is not None:
            T = Interval(0.0, Interval.exact(span).hi)
            Y = self.enclose(X, sx, T)
            if Y is None:
                raise StepUnderflow(f"no a-priori enclosure for interval step of length {float(span)}")
            h = None
        else:
            h = Fraction(self.suggest_step(sx))
            if limit is not None and limit <= h:
                h = Fraction(limit)
            while True:
                T = Interval.exact(h)
                Y = self.enclose(X, sx, T)
                if Y is not None:
                    break
                h /= 2
                logger.debug("a-priori enclosure failed, halving step to %.3e", float(h))
                if h < Fraction(cfg.min_step):
                    raise StepUnderflow(f"step fell below {cfg.min_step} at t={float(state.clock)}")

        sy = self.series(Y, gradient=True)
        powers = _powers(T, p + 1)
        W = self._variational_bound(sy.jac[1], T)
        J = _taylor_sum(powers, sx.jac, p) + powers[p + 1] * (sy.jac[p + 1] @ W)

        center_series = self.tape.series(Interval(state.set.center), p)
        y_c = _taylor_sum(powers, center_series.coeffs, p) + powers[p + 1] * sy.coeffs[p + 1]

        current = state.set
        mJ = J.mid()
        center = y_c.mid()
        C = mJ @ current.C
        B = orthonormal_frame(mJ @ current.B)
        B_inv = verified_inverse(B)
        r = B_inv @ (
            (J @ Interval(current.B)) @ current.r
            + (J @ Interval(current.C) - C) @ current.r0
            + (y_c - center)
        )
        new_set = DoubletonSet(center, C, current.r0, B, r)

        derivative = None if state.derivative is None else J @ state.derivative
        if h is None:
            clock = state.clock
            time = state.time + T
        else:
            clock = state.clock + h
            time = Interval.exact(clock)
        new_state = FlowState(new_set, derivative, clock, time)

        box = new_state.hull()
        if not box.is_bounded() or box.max_width() > cfg.max_diameter:
            raise BlowUp(f"enclosure width {box.max_width():.3e} exceeds {cfg.max_diameter}")

        segment = TubeSegment(state.time.hull(time), Y)
        return StepRecord(new_state, T, segment, J)

    def propagate(self, state, duration, tube=None, span=None):
        """Advance by an exact non-negative duration, then optionally by an interval step."""
        target = state.clock + Fraction(duration)
        steps = 0
        while state.clock < target:
            if steps >= self.config.max_steps:
                raise IntegrationError(f"step budget {self.config.max_steps} exhausted")
            record = self.step(state, limit=target - state.clock)
            state = record.state
            steps += 1
            if tube is not None:
                tube.append(record.segment)
        if span:
            record = self.step(state, span=span)
            state = record.state
            steps += 1
            if tube is not None:
                tube.append(record.segment)
        logger.debug("propagated %d steps to t=%s", steps, state.time)
        return state, steps


def _split_time(t):
    """(sign, exact start, interval spread) of a duration or a time interval."""
    if isinstance(t, Interval):
        lo, hi = float(t.lo), float(t.hi)
        if lo < 0 < hi:
            raise IntegrationError("time interval must not straddle zero")
        if hi <= 0:
            return -1, Fraction(-hi), Fraction(hi) - Fraction(lo)
        return 1, Fraction(lo), Fraction(hi) - Fraction(lo)
    t = Fraction(t)
    return (-1 if t < 0 else 1), abs(t), Fraction(0)


def flow_rigorous(field, W, t, config=None, want_derivative=False, tube=False):
    """Enclose Phi_t(W) and, optionally, D Phi_t on W. Negative times run the reversed field."""
    config = config or IntegratorConfig.from_settings()
    sign, start, spread = _split_time(t)
    if sign < 0:
        field = field.reversed()
    integrator = LohnerIntegrator(field, config)
    segments = TubeEnclosure() if tube else None
    state, steps = integrator.propagate(
        FlowState.initial(W, want_derivative), start, tube=segments, span=spread
    )
    elapsed = state.time if sign > 0 else -state.time
    if sign < 0 and segments is not None:
        segments = TubeEnclosure(
            replace(segment, time=-segment.time) for segment in segments
        )
    return FlowResult(
        state=state.hull(),
        derivative=state.derivative,
        elapsed=elapsed,
        tube=segments,
        steps=steps,
        final=state,
    )
