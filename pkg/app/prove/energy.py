"""
Energy of the ejection-collision orbit.

Zeros of Psi(h, w) = (Phi_{s1}(w0) - w, pu(P(w))) with P the map to {v = 0}
give an orbit leaving collision at w0 and reaching an S-fixed point w2 on
{v = 0, pu = 0}; by the reversing symmetry it returns to w0 at twice that
time. The zero is first located by float shooting, then verified by
interval Newton on a small box around it.

The chart points w4..wK past w3 = S w1 are closed into a pseudo-orbit by
float multiple shooting at the same energy; the only gap left is along the
unstable direction at N4.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from django.conf import settings

from core.exceptions import EnclosureTooWide, NewtonFailure, VerificationFailure
from cover.certificates import Certificate, CertificateKind
from flow import IntegratorConfig, flow_fast, flow_rigorous
from ivl import Interval
from model import ExtendedRegularizedField, gradient_reg, hamiltonian_reg
from rootfind import interval_newton
from section import CoordinateSection, crossing_fast, crossing_map

logger = logging.getLogger(__name__)

SIGMA_V = CoordinateSection(1, 0.0)
PU = 2
H0_RANGE = ("-0.71106", "-0.71105")
SHOOTING_ITERATIONS = 25
SHOOTING_TOLERANCE = 1e-14
NEWTON_RADIUS = 1e-11
INFLATION_ATTEMPTS = 4
W2_REGION_RADIUS = 0.1
PROJECTION_STEPS = 8
TAIL_START = 4
TAIL_ITERATIONS = 12
TAIL_REGION_RADIUS = 1e-2
# v and pu vanish on S-fixed points
S_ODD = (1, PU)


@dataclass(frozen=True)
class H0Result:
    """Verified zero of Psi with the data of the closing half orbit."""

    h0: Interval
    w1: Interval
    w2: Interval
    tau: Interval
    s1: Fraction
    iterations: int

    @property
    def width(self):
        return float(self.h0.width())

    def certificate(self, config_hash=""):
        return Certificate(
            relation_id="h0",
            kind=CertificateKind.H0,
            provenance="interval-newton",
            config_hash=config_hash,
            details={
                "h0": self.h0.to_pairs(),
                "width": self.width,
                "w1": self.w1.to_pairs(),
                "w2": self.w2.to_pairs(),
                "tau": self.tau.to_pairs(),
                "s1": str(self.s1),
                "iterations": self.iterations,
                "symmetry": "v(w2) = 0 on the section and pu(w2) = 0 at the zero, so S w2 = w2 "
                "and Phi_{2 tau}(w0) = w0",
            },
        )


def w0_enclosure(params):
    """(0, 0, 0, sqrt(8 mu2)), the collision state on the regularized circle."""
    pv = Interval.exact(8 * params.mu2).sqrt()
    return Interval.concatenate([Interval.zeros(3), pv.reshape(1)])


def _extended(box, h):
    return Interval.concatenate([Interval.coerce(box)[:4], Interval.coerce(h).reshape(1)])


class EnergyProblem:
    """Psi and its derivative, in floats and in intervals, for one dataset and s1."""

    def __init__(self, dataset, config=None, s1=None):
        self.dataset = dataset
        self.config = config or IntegratorConfig.from_settings()
        self.s1 = Fraction(dataset.s1 if s1 is None else s1)
        self.field = ExtendedRegularizedField(dataset.params, dataset.primary)
        self.w0 = w0_enclosure(dataset.params)
        w2 = dataset.w[2]
        self.region = Interval(w2 - W2_REGION_RADIUS, w2 + W2_REGION_RADIUS)

    # floats

    def evaluate(self, x):
        """Psi(x) and DPsi(x) at a point x = (h, w)."""
        h, w = float(x[0]), np.asarray(x[1:], dtype=np.float64)
        start = np.concatenate([self.w0.mid(), [h]])
        flow = flow_fast(self.field, start, float(self.s1), self.config, want_derivative=True)
        cross = crossing_fast(
            self.field,
            np.concatenate([w, [h]]),
            SIGMA_V,
            self.config,
            want_derivative=True,
            region=self.region,
        )
        value = np.concatenate([flow.state[:4] - w, [cross.point[PU]]])
        jacobian = np.zeros((5, 5))
        jacobian[:4, 0] = flow.derivative[:4, 4]
        jacobian[:4, 1:] = -np.eye(4)
        jacobian[4, 0] = cross.derivative[PU, 4]
        jacobian[4, 1:] = cross.derivative[PU, :4]
        return value, jacobian

    def guess(self, h):
        start = np.concatenate([self.w0.mid(), [float(h)]])
        w1 = flow_fast(self.field, start, float(self.s1), self.config).state[:4]
        return np.concatenate([[float(h)], w1])

    # intervals

    def F(self, x):
        x = Interval.coerce(x)
        h = x[0]
        flow = flow_rigorous(self.field, _extended(self.w0, h), self.s1, self.config)
        cross = crossing_map(
            self.field, _extended(x[1:], h), SIGMA_V, self.config,
            want_derivative=False, region=self.region,
        )
        return Interval.concatenate([flow.state[:4] - x[1:], cross.point[PU].reshape(1)])

    def DF(self, X):
        X = Interval.coerce(X)
        h = X[0]
        flow = flow_rigorous(
            self.field, _extended(self.w0, h), self.s1, self.config, want_derivative=True
        )
        cross = crossing_map(
            self.field, _extended(X[1:], h), SIGMA_V, self.config,
            want_derivative=True, region=self.region,
        )
        top = Interval.concatenate([flow.derivative[:4, 4:5], -Interval.identity(4)], axis=1)
        bottom = Interval.concatenate(
            [cross.derivative[PU:PU + 1, 4:5], cross.derivative[PU:PU + 1, :4]], axis=1
        )
        return Interval.concatenate([top, bottom])

    def close_orbit(self, enclosure):
        """w2 = P(w1) and tau = s1 + crossing time over the verified box."""
        h = enclosure[0]
        cross = crossing_map(
            self.field, _extended(enclosure[1:], h), SIGMA_V, self.config,
            want_derivative=False, region=self.region,
        )
        tau = Interval.exact(self.s1) + Interval.coerce(cross.time)
        return cross.point[:4], tau


def shoot(problem, h_guess, iterations=SHOOTING_ITERATIONS, tol=SHOOTING_TOLERANCE):
    """Float Newton on Psi from the guess; returns the refined x = (h, w1)."""
    x = problem.guess(h_guess)
    for iteration in range(1, iterations + 1):
        value, jacobian = problem.evaluate(x)
        step = np.linalg.solve(jacobian, value)
        x = x - step
        logger.debug("shooting step %d: h=%.15f |step|=%.3e", iteration, x[0], np.max(np.abs(step)))
        if np.max(np.abs(step)) <= tol * (1 + np.max(np.abs(x))):
            break
    else:
        logger.warning("shooting did not settle after %d steps", iterations)
    logger.info("shooting gives h0 ~ %.15f", x[0])
    return x


def level_projector(params, primary, h, steps=PROJECTION_STEPS):
    """Move a point along grad Gamma_h onto {Gamma_h = 0}; S-fixed points stay S-fixed."""

    def project(w):
        w = np.asarray(w, dtype=np.float64)
        for _ in range(steps):
            gamma = float(hamiltonian_reg(w, h, params, primary))
            if abs(gamma) <= SHOOTING_TOLERANCE:
                break
            grad = np.asarray(gradient_reg(w, h, params, primary), dtype=np.float64)
            w = w - gamma * grad / (grad @ grad)
        return w

    return project


@dataclass(frozen=True)
class TailResult:
    """Rows w4..wK of a pseudo-orbit closed by multiple shooting."""

    tail: np.ndarray
    sigma: float
    residual: float
    iterations: int


def tail_crossing(dataset, config=None):
    """P_k(w) onto the section of chart k at the guessed energy, with its 4 x 4 derivative."""
    config = config or IntegratorConfig.from_settings()
    field = ExtendedRegularizedField(dataset.params, dataset.primary)
    h = dataset.h0_guess

    def cross(k, w):
        region = Interval(dataset.w[k] - TAIL_REGION_RADIUS, dataset.w[k] + TAIL_REGION_RADIUS)
        result = crossing_fast(
            field,
            np.concatenate([w, [h]]),
            dataset.chart(k).section,
            config,
            want_derivative=True,
            region=region,
        )
        return result.point[:4], result.derivative[:4, :4]

    return cross


def _tail_system(start, x, unstable, cross):
    """Residuals P_k(w_{k-1}) - w_k, the gap sigma eps u4 at N4 and the S-fixed end, with their Jacobian."""
    rows = x[1:].reshape(-1, 4)
    n = rows.shape[0]
    value = np.zeros(4 * n + 2)
    jacobian = np.zeros((4 * n + 2, x.size))
    previous = start
    for i in range(n):
        point, derivative = cross(TAIL_START + i, previous)
        block = slice(4 * i, 4 * i + 4)
        value[block] = point - rows[i]
        jacobian[block, 1 + 4 * i:5 + 4 * i] = -np.eye(4)
        if i == 0:
            value[block] -= x[0] * unstable
            jacobian[block, 0] = -unstable
        else:
            jacobian[block, 1 + 4 * (i - 1):5 + 4 * (i - 1)] = derivative
        previous = rows[i]
    last = 1 + 4 * (n - 1)
    for j, index in enumerate(S_ODD):
        value[4 * n + j] = rows[-1][index]
        jacobian[4 * n + j, last + index] = 1.0
    return value, jacobian


def refine_orbit(dataset, config=None, crossing=None, iterations=TAIL_ITERATIONS, tol=SHOOTING_TOLERANCE):
    """Gauss-Newton on the tail w4..wK from w3.

    Each w_k is the image of w_{k-1}, up to a gap sigma eps u4 at N4, and wK
    is S-fixed.

    `crossing(k, w)` returns the crossing point and its derivative; by default
    the orbit is integrated at the dataset's h0 guess.
    """
    cross = crossing or tail_crossing(dataset, config)
    unstable = float(dataset.epsilon) * np.asarray(dataset.u_hat[TAIL_START], dtype=np.float64)
    x = np.concatenate([[0.0], dataset.w[TAIL_START:].ravel()])
    # sigma moves the tail by eps |u4| per unit
    weights = np.concatenate([[float(np.linalg.norm(unstable))], np.ones(x.size - 1)])
    residual = np.inf
    for iteration in range(1, iterations + 1):
        value, jacobian = _tail_system(dataset.w[TAIL_START - 1], x, unstable, cross)
        residual = float(np.max(np.abs(value)))
        step = np.linalg.lstsq(jacobian, value, rcond=None)[0]
        x = x - step
        logger.debug("tail step %d: sigma=%.6g |step|=%.3e", iteration, x[0], np.max(np.abs(step)))
        if np.max(np.abs(step * weights)) <= tol * (1 + np.max(np.abs(x[1:]))):
            break
    else:
        logger.warning("tail refinement did not settle after %d steps", iterations)
    sigma = float(x[0])
    if abs(sigma) > 1:
        logger.warning("tail leaves N%d %.3g chart widths from its centre", TAIL_START, sigma)
    logger.info("refined w%d..w%d: sigma=%.6g residual=%.3e", TAIL_START, dataset.K, sigma, residual)
    return TailResult(tail=x[1:].reshape(-1, 4), sigma=sigma, residual=residual, iterations=iteration)


def refine_dataset(dataset, config=None, s1=None):
    """Shoot for h0 and w1, cross to w2, close the tail w4..wK and rebuild the tables."""
    problem = EnergyProblem(dataset, config, s1)
    x = shoot(problem, dataset.h0_guess)
    h0, w1 = x[0], x[1:]
    cross = crossing_fast(
        problem.field, np.concatenate([w1, [h0]]), SIGMA_V, problem.config, region=problem.region
    )
    w2 = cross.point[:4].copy()
    w2[PU] = 0.0
    project = level_projector(dataset.params, dataset.primary, h0)
    shot = dataset.refined(h0, w1, w2, project=project)
    tail = refine_orbit(shot, problem.config)
    refined = dataset.refined(h0, w1, w2, tail=tail.tail)
    logger.info("refined chart dataset at h0 ~ %.15f, tau ~ %.12f", h0, float(problem.s1) + cross.time)
    return refined, x


def h0_bounds():
    lo, hi = (Interval.exact(value) for value in H0_RANGE)
    return Interval(float(lo.hi), float(hi.lo))


def find_h0(dataset, config=None, s1=None, budget=None, guess=None):
    """Verified enclosure of h0 and w1; raises unless it is narrow and inside the expected range."""
    problem = EnergyProblem(dataset, config, s1)
    budget = settings.PROOF["H0_WIDTH_BUDGET"] if budget is None else budget
    x = np.asarray(guess, dtype=np.float64) if guess is not None else shoot(problem, dataset.h0_guess)

    radius = NEWTON_RADIUS * (1 + np.abs(x))
    outcome = None
    for _ in range(INFLATION_ATTEMPTS):
        X = Interval(x - radius, x + radius)
        outcome = interval_newton(problem.F, problem.DF, X, x=x)
        if outcome.verified:
            break
        logger.debug("h0 not verified (%s), inflating", outcome.diagnostic)
        radius = 10 * radius
    if outcome is None or not outcome.verified:
        raise NewtonFailure(f"interval Newton on Psi: {outcome.diagnostic if outcome else 'not run'}")

    enclosure = outcome.enclosure
    h0 = enclosure[0]
    width = float(h0.width())
    if width > budget:
        raise EnclosureTooWide(f"h0 enclosure width {width:.3e} exceeds {budget:.1e}")
    if not h0.subset(h0_bounds()):
        raise VerificationFailure(f"h0 enclosure {h0!r} leaves [{H0_RANGE[0]}, {H0_RANGE[1]}]")

    w2, tau = problem.close_orbit(enclosure)
    logger.info(
        "h0 in [%.15f, %.15f] (width %.3e, s1=%s) after %d Newton steps",
        float(h0.lo), float(h0.hi), width, problem.s1, outcome.iterations,
    )
    return H0Result(
        h0=h0,
        w1=enclosure[1:],
        w2=w2,
        tau=tau,
        s1=problem.s1,
        iterations=outcome.iterations,
    )
