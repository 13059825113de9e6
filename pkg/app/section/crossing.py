"""
First crossing of a section, non-rigorous and rigorous.

The rigorous search steps the Lohner integrator until the a-priori
enclosure of a step meets the section inside the target region. The
crossing time is then enclosed by the mean-value form of the section
function and the set is moved across the section with one interval step.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from core.exceptions import NoCrossing, TangentialCrossing
from flow import FlowState, IntegratorConfig, LohnerIntegrator, TubeEnclosure, flow_fast
from ivl import Interval

logger = logging.getLogger(__name__)

DEFAULT_MAX_TIME = 50.0
FAST_CHUNK = 1.0
DEPARTURE_TIME = 1e-9
LOCATE_ATTEMPTS = 12
ESTIMATE_SAMPLES = 65


@dataclass
class CrossingResult:
    point: object
    time: object
    derivative: object = None
    tube: TubeEnclosure = None
    steps: int = 0
    direction: int = 0


def _projected_derivative(V, f, grad):
    """(I - f grad^T / <grad, f>) V, the derivative of the map to the section."""
    n = grad.shape[0]
    if isinstance(V, Interval):
        f = Interval.coerce(f)
        grad = Interval(grad)
        return V - (f.reshape(n, 1) @ (grad.reshape(1, n) @ V)) / (grad @ f)
    return V - np.outer(f, grad @ V) / (grad @ f)


def _in_region(region, point):
    if region is None:
        return True
    if isinstance(point, Interval):
        return point[:region.shape[0]].intersect(region) is not None
    return bool(np.all(region.contains(np.asarray(point)[:region.shape[0]])))


def crossing_fast(
    field,
    w,
    section,
    config=None,
    want_derivative=False,
    region=None,
    min_time=0.0,
    max_time=DEFAULT_MAX_TIME,
):
    """Float first crossing of `section` after `min_time`, inside `region`."""
    config = config or IntegratorConfig.from_settings()
    w = np.asarray(w, dtype=np.float64)
    n = w.size
    grad = section.gradient(n)
    on_section = abs(float(section.value(w))) < 1e-12

    def event(_, y):
        return float(section.value(y[:n]))

    elapsed = 0.0
    current = w
    V = np.eye(n)
    while elapsed < max_time:
        span = min(FAST_CHUNK, max_time - elapsed)
        res = flow_fast(field, current, span, config, want_derivative=want_derivative, events=[event])
        times, states = res.events
        for t_hit, y_hit in zip(times[0], states[0]):
            t_total = elapsed + float(t_hit)
            if t_total <= min_time or (on_section and t_total < DEPARTURE_TIME):
                continue
            point = np.asarray(y_hit[:n])
            if not _in_region(region, point):
                continue
            f = field.evaluate(point)
            derivative = None
            if want_derivative:
                V_hit = np.asarray(y_hit[n:]).reshape(n, n) @ V
                derivative = _projected_derivative(V_hit, f, grad)
            return CrossingResult(
                point=point,
                time=t_total,
                derivative=derivative,
                direction=int(np.sign(grad @ f)),
            )
        current = res.state
        if want_derivative:
            V = res.derivative @ V
        elapsed += span
    raise NoCrossing(f"no crossing of {section} within time {max_time}")


class _CrossingSearch:
    def __init__(self, field, section, config, region, tube):
        self.field = field
        self.section = section
        self.config = config
        self.region = region
        self.tube = tube
        self.integrator = LohnerIntegrator(field, config)
        self.steps = 0

    def value(self, box):
        return self.section.value_enclosure(box)

    def rate(self, box, grad):
        """<grad g, f> over a box; must exclude zero."""
        d = grad @ Interval.coerce(self.field(box))
        if bool(d.contains_zero()):
            raise TangentialCrossing(f"transversality enclosure {d!r} contains zero")
        return d

    def advance(self, record):
        self.steps += 1
        if self.tube is not None:
            self.tube.append(record.segment)
        return record.state

    def estimate(self, state, horizon):
        """Float time to the section for the centre trajectory, from its Taylor polynomial."""
        series = self.integrator.tape.series(Interval(state.set.center), self.integrator.order)
        coeffs = series.coeffs.mid()[: self.integrator.order + 1]

        def g(t):
            powers = t ** np.arange(coeffs.shape[0])
            return float(self.section.value(powers @ coeffs))

        grid = np.linspace(0.0, horizon, ESTIMATE_SAMPLES)
        values = [g(t) for t in grid]
        for k in range(1, len(grid)):
            if values[k - 1] == 0:
                return float(grid[k - 1])
            if np.sign(values[k - 1]) != np.sign(values[k]):
                return brentq(g, grid[k - 1], grid[k], xtol=1e-15, rtol=4 * np.finfo(float).eps)
        return float(horizon)

    def locate(self, state, horizon, grad, want_derivative):
        """Cross the section from `state`, which is known to lie strictly on one side."""
        d = None
        delta = None
        for _ in range(LOCATE_ATTEMPTS):
            X = state.hull()
            tau = self.estimate(state, horizon)
            if delta is None:
                window = self.integrator.enclose(
                    X, self.integrator.series(X), Interval.exact(Fraction(horizon))
                )
                if window is None:
                    raise NoCrossing("no enclosure over the crossing step")
                d = self.rate(window, grad)
                spread = float(self.value(X).width()) / float(d.mig())
                delta = max(4 * spread, 1e-6 * horizon, 1e-15)

            lead = tau - delta
            if lead > self.config.min_step:
                record = self.integrator.step(state, limit=Fraction(lead))
                g_seg = self.value(record.segment.box)
                if not bool(g_seg.contains_zero()):
                    advanced = float(record.state.clock - state.clock)
                    state = self.advance(record)
                    horizon = max(horizon - advanced, 2 * delta)
                    continue
                delta *= 4
                logger.debug("pre-step touched the section, widening margin to %.3e", delta)
                continue

            X = state.hull()
            gX = self.value(X)
            window_length = Fraction(max(tau, 0.0) + 2 * delta)
            Y = self.integrator.enclose(X, self.integrator.series(X), Interval.exact(window_length))
            if Y is None:
                delta /= 2
                continue
            d = self.rate(Y, grad)
            T = (-gX) / d
            if float(T.hi) < 0:
                raise NoCrossing("section lies behind the set")
            cap = float(Interval.exact(window_length).lo)
            T = T.intersect(Interval(0.0, cap))
            if T is None or not float(T.hi) < cap:
                delta *= 2
                continue

            start = Fraction(float(T.lo))
            span = Fraction(float(T.hi)) - start
            final, taken = self.integrator.propagate(state, start, tube=self.tube, span=span)
            self.steps += taken
            P = self.section.sharpen(final.hull())
            derivative = None
            if want_derivative:
                derivative = _projected_derivative(final.derivative, self.field(P), grad)
            direction = 1 if float(d.lo) > 0 else -1
            return CrossingResult(
                point=P,
                time=final.time,
                derivative=derivative,
                tube=self.tube,
                steps=self.steps,
                direction=direction,
            )
        raise NoCrossing(f"crossing window could not be closed after {LOCATE_ATTEMPTS} attempts")


def crossing_map(
    field,
    W,
    section,
    config=None,
    want_derivative=True,
    record_tube=False,
    region=None,
    min_time=0,
    max_time=None,
):
    """Enclose P(W), the crossing times and, optionally, DP on W.

    A set that starts on the section must first leave it; the departure
    root is skipped once the rate <grad g, f> is verified to keep one sign.
    """
    config = config or IntegratorConfig.from_settings()
    W = Interval.coerce(W)
    n = W.shape[0]
    grad = Interval(section.gradient(n))
    tube = TubeEnclosure() if record_tube else None
    search = _CrossingSearch(field, section, config, region, tube)
    state = FlowState.initial(W, want_derivative)
    departing = bool(search.value(W).contains_zero()) or min_time > 0
    departure_sign = 0

    while True:
        if search.steps >= config.max_steps:
            raise NoCrossing(f"no crossing of {section} within {config.max_steps} steps")
        if max_time is not None and state.clock > Fraction(max_time):
            raise NoCrossing(f"no crossing of {section} before t={max_time}")

        record = search.integrator.step(state)
        Y = record.segment.box
        g_Y = search.value(Y)

        if departing:
            if bool(g_Y.contains_zero()):
                sign = 1 if float(search.rate(Y, grad).lo) > 0 else -1
                if departure_sign and sign != departure_sign:
                    raise TangentialCrossing("rate changed sign while leaving the section")
                departure_sign = sign
            state = search.advance(record)
            if not bool(search.value(state.hull()).contains_zero()) and state.clock >= Fraction(min_time):
                departing = False
                logger.debug("left the section after %d steps", search.steps)
            continue

        if bool(g_Y.contains_zero()) and _in_region(region, Y):
            gX = search.value(state.hull())
            g_end = search.value(record.state.hull())
            search.rate(Y, grad)
            same_side = not bool(g_end.contains_zero()) and float(g_end.lo) * float(gX.lo) > 0
            if not same_side:
                result = search.locate(state, float(record.step.hi), grad, want_derivative)
                logger.debug(
                    "crossed %s at t in [%.15g, %.15g] after %d steps",
                    section, float(result.time.lo), float(result.time.hi), result.steps,
                )
                return result

        state = search.advance(record)
