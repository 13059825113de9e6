"""
Derivative bounds that make a hyperbolic fixed point generate approach sets.

For f = eta_L^-1 o g o eta_L with f(0) = 0 and, over N_c,
  df1/dz1 > alpha,   df1/dz2 in (-c, 0),
  df2/dz1 in (0, c), df2/dz2 in (beta, rho),
together with alpha > 2c + rho and c + rho < 1, every rectangle
R_{a,b} = [0, b] x [a, b] covers R_{a', b'} and Q_{a', b'} with
a' = beta a and b' = (c + rho) b.

Numerically f(0) is only close to 0. The fixed point (or, for the four
legs g0..g3, the cycle q_i = f_i(q_{i-1})) is enclosed by interval Newton
and the sets are placed around that enclosure instead of the origin.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from core.exceptions import BoundsViolated
from cover.certificates import Certificate, CertificateKind
from cover.hsets import UNIT_SQUARE
from ivl import Interval
from rootfind import interval_newton
from section.eta import eta_matrix, exact_shear

logger = logging.getLogger(__name__)

FIXED_POINT_TOLERANCE = 1e-3
# relative slack when bounds are read off the enclosure itself
DERIVED_MARGIN = 1e-6
# Newton boxes tried around the float estimate of the cycle
ANCHOR_RADII = (1e-12, 1e-10, 1e-8, 1e-6, 1e-4)


def _exact(value):
    return Fraction(repr(value)) if isinstance(value, float) else Fraction(value)


@dataclass(frozen=True)
class ConeBounds:
    alpha: Fraction
    beta: Fraction
    rho: Fraction
    c: Fraction
    derivative: Interval = None
    residual: Interval = None
    shear: Fraction = Fraction(0)
    anchor: Interval = None

    @property
    def decay(self):
        """c + rho, the contraction of the outer bound b per step."""
        return self.c + self.rho

    def check_inequalities(self):
        if not self.alpha > 2 * self.c + self.rho:
            raise BoundsViolated("alpha > 2c + rho", f"alpha={self.alpha} <= 2c + rho={2 * self.c + self.rho}")
        if not self.decay < 1:
            raise BoundsViolated("c + rho < 1", f"c + rho = {self.decay}")
        if not self.rho > self.beta:
            raise BoundsViolated("rho > beta", f"rho={self.rho} <= beta={self.beta}")

    def to_dict(self):
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "rho": str(self.rho),
            "c": str(self.c),
            "L": str(self.shear),
            "derivative": None if self.derivative is None else self.derivative.to_pairs(),
            "residual": None if self.residual is None else self.residual.to_pairs(),
            "anchor": None if self.anchor is None else self.anchor.to_pairs(),
        }


def conjugated_derivative(derivative, L):
    """Df = eta_{-L} Dg eta_L for a derivative enclosure of g taken over eta_L(N_c)."""
    return eta_matrix(-exact_shear(L)) @ Interval.coerce(derivative) @ eta_matrix(L)


def conjugated_map(g, L):
    """f = eta_L^-1 o g o eta_L on 2-boxes of z coordinates."""
    forward, backward = eta_matrix(L), eta_matrix(-exact_shear(L))

    def f(z):
        return backward @ g(forward @ Interval.coerce(z))

    return f


def _cycle_jacobian(blocks):
    """d/dq of (f_i(q_{i-1}) - q_i)_i, one 2x2 block row per map."""
    n = len(blocks)
    rows = []
    for i, block in enumerate(blocks):
        row = []
        for j in range(n):
            entry = block if j == (i - 1) % n else Interval.zeros((2, 2))
            if j == i:
                entry = entry - Interval.identity(2)
            row.append(entry)
        rows.append(Interval.concatenate(row, axis=1))
    return Interval.concatenate(rows, axis=0)


def enclose_anchors(maps, L):
    """Enclose the cycle q_i = f_i(q_{i-1}) near the origin, indices mod len(maps).

    maps[i] takes the chart of q_{i-1} to the chart of q_i; a single map
    gives its fixed point. Returns one 2-box per chart in z coordinates.
    """
    L = exact_shear(L)
    n = len(maps)
    fs = [conjugated_map(g, L) for g in maps]
    jacobian = _cycle_jacobian([conjugated_derivative(g.derivative, L) for g in maps])

    def F(x):
        q = Interval.coerce(x).reshape(n, 2)
        return Interval.concatenate([fs[i](q[(i - 1) % n]) - q[i] for i in range(n)])

    def DF(X):
        return jacobian

    try:
        guess = np.linalg.solve(jacobian.mid(), -F(Interval.zeros(2 * n)).mid())
    except np.linalg.LinAlgError as exc:
        raise BoundsViolated("fixed point", f"f - id is singular: {exc}") from exc
    square = Interval.concatenate([UNIT_SQUARE] * n)
    outcome = None
    for radius in ANCHOR_RADII:
        X = Interval(guess).inflate(absolute=radius)
        if not X.interior(square):
            break
        outcome = interval_newton(F, DF, X, x=guess)
        if outcome.verified:
            anchors = outcome.enclosure.reshape(n, 2)
            logger.info("cycle of %d maps enclosed to width %.3e", n, outcome.enclosure.max_width())
            return [anchors[i] for i in range(n)]
    detail = "estimate leaves N_c" if outcome is None else outcome.diagnostic
    raise BoundsViolated("fixed point", f"no enclosure of the cycle near {guess.tolist()}: {detail}")


def _bounds_from_enclosure(Df):
    """Tightest constants the enclosure supports, loosened by DERIVED_MARGIN."""
    lo, hi = Df.lo, Df.hi
    slack = 1 + DERIVED_MARGIN
    c = max(abs(float(lo[0, 1])), abs(float(hi[1, 0]))) * slack
    return (
        _exact(float(lo[0, 0]) / slack),
        _exact(float(lo[1, 1]) / slack),
        _exact(float(hi[1, 1]) * slack),
        _exact(c),
    )


def _inside(x, lower, upper):
    """lower < x < upper for an interval x and exact bounds."""
    return Fraction(float(x.lo)) > lower and Fraction(float(x.hi)) < upper


def check_cone_bounds(
    g, L, alpha=None, beta=None, rho=None, c=None, tolerance=FIXED_POINT_TOLERANCE, anchor=None
):
    """Verify the derivative conditions for f = eta_L^-1 g eta_L over N_c.

    `g` is a local map enclosure in chart coordinates: callable on 2-boxes
    with a `derivative` attribute enclosing Dg over a domain containing
    eta_L(N_c). Constants left as None are read off the enclosure.
    `anchor` encloses the point the sets are centred on, in z coordinates
    of the source chart; by default the fixed point of f is enclosed.
    """
    L = exact_shear(L)
    residual = g(Interval(np.zeros(2)))
    if float(residual.mag().max()) > tolerance:
        raise BoundsViolated("g(0) = 0", f"g(0) enclosure {residual!r} exceeds {tolerance}")
    domain = getattr(g, "domain", None)
    if domain is not None and not (eta_matrix(L) @ UNIT_SQUARE).subset(domain):
        raise BoundsViolated("domain", f"derivative domain {domain!r} does not contain eta_L(N_c)")
    anchor = enclose_anchors([g], L)[0] if anchor is None else Interval.coerce(anchor)
    if not anchor.interior(UNIT_SQUARE):
        raise BoundsViolated("fixed point", f"anchor {anchor!r} is not inside N_c")

    Df = conjugated_derivative(g.derivative, L)
    derived = _bounds_from_enclosure(Df)
    alpha, beta, rho, c = (
        derived[i] if value is None else _exact(value)
        for i, value in enumerate((alpha, beta, rho, c))
    )

    if not Fraction(float(Df[0, 0].lo)) > alpha:
        raise BoundsViolated("df1/dz1 > alpha", f"df1/dz1 = {Df[0, 0]!r}, alpha = {float(alpha)}")
    if not _inside(Df[0, 1], -c, Fraction(0)):
        raise BoundsViolated("df1/dz2 in (-c, 0)", f"df1/dz2 = {Df[0, 1]!r}, c = {float(c)}")
    if not _inside(Df[1, 0], Fraction(0), c):
        raise BoundsViolated("df2/dz1 in (0, c)", f"df2/dz1 = {Df[1, 0]!r}, c = {float(c)}")
    if not _inside(Df[1, 1], beta, rho):
        raise BoundsViolated(
            "df2/dz2 in (beta, rho)", f"df2/dz2 = {Df[1, 1]!r}, beta = {float(beta)}, rho = {float(rho)}"
        )

    bounds = ConeBounds(alpha, beta, rho, c, derivative=Df, residual=residual, shear=L, anchor=anchor)
    bounds.check_inequalities()
    logger.info(
        "cone bounds hold: alpha=%.4g beta=%.4g rho=%.4g c=%.4g",
        float(alpha), float(beta), float(rho), float(c),
    )
    return bounds


def cone_certificate(bounds, label, leg="", config_hash=""):
    return Certificate(
        relation_id=f"cone:{label}",
        kind=CertificateKind.CONE,
        source=label,
        target=label,
        leg=leg,
        provenance="integrated",
        details=bounds.to_dict(),
        config_hash=config_hash,
    )
