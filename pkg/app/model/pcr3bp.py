"""
Planar circular restricted three-body problem in the rotating frame and
in Levi-Civita coordinates around one primary.

Every function accepts floats, complex numbers, numpy arrays, intervals or
Taylor variables; constants are lifted to the argument's number type.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import (
    CollisionSingularity,
    RegularizedCollision,
    SecondPrimarySingularity,
)
from model.arith import assemble, lift, may_vanish, split, sqr, sqrt
from model.params import EARTH_MOON


class Frame(str, enum.Enum):
    STD = "std"
    REG = "reg"


@dataclass(frozen=True)
class PhaseState:
    """A point or box of the 4-D phase space tagged with its coordinate frame."""

    coords: object
    frame: Frame = Frame.REG
    primary: int = 2
    h: object = None
    params: object = field(default=EARTH_MOON, repr=False)

    def mirrored(self):
        return PhaseState(symmetry_S(self.coords), self.frame, self.primary, self.h, self.params)

    def to_standard(self):
        if self.frame is Frame.STD:
            return self
        return PhaseState(
            lc_forward(self.coords, self.params, self.primary),
            Frame.STD,
            self.primary,
            self.h,
            self.params,
        )


def symmetry_S(w):
    """Reversing symmetry (x, y, px, py) -> (x, -y, -px, py); same form in (u, v, pu, pv)."""
    parts = list(split(w, len(w)))
    parts[1] = -parts[1]
    parts[2] = -parts[2]
    return assemble(parts)


def _guard(value, exc, message):
    if may_vanish(value):
        raise exc(message)


# rotating frame


def _primary_terms(q, params):
    x, y, px, py = split(q)
    terms = []
    for i in (1, 2):
        mu = lift(params.mu(i), x)
        dx = x - lift(params.position(i), x)
        r2 = sqr(dx) + sqr(y)
        _guard(r2, CollisionSingularity, f"distance to primary {i} may vanish")
        terms.append((mu, dx, r2))
    return terms


def hamiltonian_std(q, params=EARTH_MOON):
    """H = (px^2 + py^2)/2 + y px - x py - sum mu_i / r_i."""
    x, y, px, py = split(q)
    energy = 0.5 * (sqr(px) + sqr(py)) + y * px - x * py
    for mu, _, r2 in _primary_terms(q, params):
        energy = energy - mu / sqrt(r2)
    return energy


def vector_field_std(q, params=EARTH_MOON):
    x, y, px, py = split(q)
    dpx = py
    dpy = -px
    for mu, dx, r2 in _primary_terms(q, params):
        r3 = r2 * sqrt(r2)
        dpx = dpx - mu * dx / r3
        dpy = dpy - mu * y / r3
    return assemble([px + y, py - x, dpx, dpy])


# Levi-Civita regularization


def lc_forward(w, params=EARTH_MOON, primary=2):
    """Map (u, v, pu, pv) to (x, y, px, py)."""
    u, v, pu, pv = split(w)
    xi = lift(params.position(primary), u)
    r2 = sqr(u) + sqr(v)
    _guard(r2, RegularizedCollision, "(u, v) may be the origin")
    return assemble([
        sqr(u) - sqr(v) + xi,
        2 * u * v,
        (u * pu - v * pv) / (2 * r2),
        (v * pu + u * pv) / (2 * r2),
    ])


def lc_preimages(q, params=EARTH_MOON, primary=2):
    """The two antipodal Levi-Civita preimages of a rotating-frame point."""
    x, y, px, py = (float(c) for c in np.asarray(q, dtype=np.float64))
    xi = float(params.position(primary))
    if x == xi and y == 0:
        raise CollisionSingularity(f"point sits on primary {primary}")
    z = np.sqrt(complex(x - xi, y))
    u, v = z.real, z.imag
    w = np.array([u, v, 2 * (u * px + v * py), 2 * (-v * px + u * py)])
    return w, -w


def _reg_terms(w, params, primary):
    u, v = w[0], w[1]
    eps = params.epsilon(primary)
    a = sqr(u) - sqr(v) + eps
    D = sqr(a) + 4 * sqr(u) * sqr(v)
    _guard(D, SecondPrimarySingularity, f"distance to primary {params.other(primary)} may vanish")
    return eps, D


def hamiltonian_reg(w, h, params=EARTH_MOON, primary=2):
    """Gamma_h = 4 r_i^2 (H - h) written in (u, v, pu, pv)."""
    u, v, pu, pv = split(w)
    h = lift(h, u)
    xi = lift(params.position(primary), u)
    mi = lift(params.mu(primary), u)
    mo = lift(params.mu(params.other(primary)), u)
    _, D = _reg_terms(w, params, primary)
    r2 = sqr(u) + sqr(v)
    inner = v * pu - u * pv - 2 * h - 2 * mo / sqrt(D)
    return 0.5 * (sqr(pu) + sqr(pv)) - 2 * xi * (v * pu + u * pv) - 4 * mi + 2 * r2 * inner


def vector_field_reg(w, h, params=EARTH_MOON, primary=2):
    """Hamiltonian vector field of Gamma_h in the fictitious time s."""
    u, v, pu, pv = split(w)
    h = lift(h, u)
    xi = lift(params.position(primary), u)
    mo = lift(params.mu(params.other(primary)), u)
    eps, D = _reg_terms(w, params, primary)
    D32 = D * sqrt(D)
    uu, vv = sqr(u), sqr(v)
    r2 = uu + vv
    du = pu + 2 * v * (r2 - xi)
    dv = pv - 2 * u * (r2 + xi)
    dpu = (
        4 * u * (2 * h - v * pu)
        + 2 * pv * (xi + 3 * uu + vv)
        + 8 * u * mo * (1 + eps * (uu - 3 * vv)) / D32
    )
    dpv = (
        4 * v * (2 * h + u * pv)
        + 2 * pu * (xi - 3 * vv - uu)
        + 8 * v * mo * (1 - eps * (vv - 3 * uu)) / D32
    )
    return assemble([du, dv, dpu, dpv])


def gradient_reg(w, h, params=EARTH_MOON, primary=2):
    """(dGamma/du, dGamma/dv, dGamma/dpu, dGamma/dpv)."""
    du, dv, dpu, dpv = split(vector_field_reg(w, h, params, primary))
    return assemble([-dpu, -dpv, du, dv])


def dgamma_dh(w):
    u, v = w[0], w[1]
    return -4 * (sqr(u) + sqr(v))


def time_rescale_rate(w):
    """dt/ds = 4 (u^2 + v^2)."""
    return 4 * (sqr(w[0]) + sqr(w[1]))


def collision_residual(w, params=EARTH_MOON):
    """(u, v, pu^2 + pv^2 - 8 mu2); zero exactly on the collision circle."""
    u, v, pu, pv = split(w)
    return assemble([u, v, sqr(pu) + sqr(pv) - 8 * lift(params.mu2, u)])


def symplectic_J(n=4):
    """Standard symplectic matrix with J grad = Hamiltonian vector field."""
    half = n // 2
    J = np.zeros((n, n))
    J[:half, half:] = np.eye(half)
    J[half:, :half] = -np.eye(half)
    return J
