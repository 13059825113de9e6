"""
Local coordinates on sections.

A chart maps z in R^2 onto its section and onto the level set {Gamma_h = 0}.
Generic charts are x = w + A (z, E(z)) where the two normal coordinates
E(z) are solved by interval Newton. The chart through the collision
circle solves Gamma_h = 0 for p_v explicitly.
"""

import logging
from fractions import Fraction

import numpy as np

from core.exceptions import DegenerateChart, DomainError, NewtonFailure, OffSection, SingularEnclosure
from ivl import Interval, linear_solve_enclosure, verified_inverse
from model.arith import absolute, assemble, lift, sqr, sqrt
from model.params import EARTH_MOON
from model.pcr3bp import gradient_reg, hamiltonian_reg, symmetry_S, symplectic_J
from rootfind import interval_newton_parametrized
from section.sections import AffineSection, CoordinateSection

logger = logging.getLogger(__name__)

CHART_SCALE = 8.5e-10
PSI0_D1 = "0.0598649594810129"
PSI0_D2 = "0.997908614890024"
REGION_RADIUS = 0.05
NEWTON_SLACK = 1e-6
INFLATION_ATTEMPTS = 5

S_MATRIX = np.diag([1.0, -1.0, -1.0, 1.0])
J_SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def _point(h):
    return float(h.mid()) if isinstance(h, Interval) else float(h)


def swap(z):
    """j(z1, z2) = (z2, z1)."""
    if isinstance(z, Interval):
        return Interval.stack([z[1], z[0]])
    z = np.asarray(z, dtype=np.float64)
    return z[::-1].copy()


class RegularizedEnergy:
    """Gamma_h and its gradient in Levi-Civita coordinates."""

    def __init__(self, params=EARTH_MOON, primary=2):
        self.params = params
        self.primary = primary

    def value(self, p, h):
        return hamiltonian_reg(p, h, self.params, self.primary)

    def gradient(self, p, h):
        return gradient_reg(p, h, self.params, self.primary)


class Chart:
    """psi: R^2 -> section, with its inverse on section and level set."""

    label = "chart"
    section = None
    w = None

    def __init__(self, h, energy=None):
        self.h = h
        self.energy = energy or RegularizedEnergy()

    def _h(self, h):
        return self.h if h is None else h

    def psi(self, z, h=None):
        raise NotImplementedError

    def psi_derivative(self, Z, h=None):
        raise NotImplementedError

    def psi_inverse(self, p, h=None):
        raise NotImplementedError

    @property
    def inverse_derivative(self):
        raise NotImplementedError

    def region(self, radius=REGION_RADIUS):
        w = np.asarray(self.w, dtype=np.float64)
        return Interval(w - radius, w + radius)

    def mirrored(self):
        return MirroredChart(self)

    def with_energy(self, h):
        raise NotImplementedError

    def satisfies_reversing_symmetry(self):
        """S psi = psi j holds by construction."""
        return False

    def _check_level(self, p, h):
        gamma = Interval.coerce(self.energy.value(p, h))
        if not bool(gamma.contains_zero()):
            raise OffSection(f"{self.label}: Gamma enclosure {gamma!r} excludes zero")
        residual = self.section.value_enclosure(p)
        if not bool(residual.contains_zero()):
            raise OffSection(f"{self.label}: section residual {residual!r} excludes zero")

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class GenericChart(Chart):
    """psi(z) = w + A (z, E(z)) with A = eps [u_hat, s_hat, U(J grad Gamma(w)), U(grad Gamma(w))]."""

    def __init__(self, w, u_hat, s_hat, h, scale=CHART_SCALE, energy=None, label=None):
        super().__init__(h, energy)
        self.label = label or "generic"
        self.w = np.asarray(w, dtype=np.float64)
        self.u_hat = np.asarray(u_hat, dtype=np.float64)
        self.s_hat = np.asarray(s_hat, dtype=np.float64)
        self.scale = float(scale)

        grad = np.asarray(self.energy.gradient(self.w, _point(h)), dtype=np.float64)
        flow_direction = symplectic_J(4) @ grad
        if not np.any(grad) or not np.all(np.isfinite(grad)):
            raise DegenerateChart(f"{self.label}: gradient of Gamma vanishes at w")
        self.normal = flow_direction
        self.A = self.scale * np.column_stack([
            self.u_hat,
            self.s_hat,
            flow_direction / np.linalg.norm(flow_direction),
            grad / np.linalg.norm(grad),
        ])
        self.A_box = Interval(self.A)
        try:
            self.A_inv = verified_inverse(self.A_box)
        except SingularEnclosure as exc:
            raise DegenerateChart(f"{self.label}: chart matrix is not invertible: {exc}") from exc
        self.w_box = Interval(self.w)
        self.normal_box = Interval(self.normal)
        self.section = AffineSection(self.w, self.normal)

    def with_energy(self, h):
        return GenericChart(self.w, self.u_hat, self.s_hat, h, self.scale, self.energy, self.label)

    def satisfies_reversing_symmetry(self):
        return bool(
            np.array_equal(symmetry_S(self.w), self.w)
            and np.array_equal(symmetry_S(self.u_hat), self.s_hat)
        )

    # residual G(z, e) = (Gamma_h(w + A x), <n, A x>) with x = (z, e)

    def _residual(self, z, e, h):
        if isinstance(z, Interval) or isinstance(e, Interval):
            x = Interval.concatenate([Interval.coerce(z), Interval.coerce(e)])
            offset = self.A_box @ x
            return Interval.stack([
                self.energy.value(self.w_box + offset, h),
                self.normal_box @ offset,
            ])
        offset = self.A @ np.concatenate([z, e])
        return np.array([self.energy.value(self.w + offset, h), self.normal @ offset])

    def _residual_jacobian(self, z, e, h):
        """Rows d Gamma / dx and d<n, A x> / dx, as a 2 x 4 matrix."""
        if isinstance(z, Interval) or isinstance(e, Interval):
            x = Interval.concatenate([Interval.coerce(z), Interval.coerce(e)])
            grad = Interval.coerce(self.energy.gradient(self.w_box + self.A_box @ x, h))
            return Interval.stack([grad @ self.A_box, self.normal_box @ self.A_box])
        grad = np.asarray(self.energy.gradient(self.w + self.A @ np.concatenate([z, e]), h))
        return np.vstack([grad @ self.A, self.normal @ self.A])

    def _solve_float(self, z, h):
        z = np.asarray(z, dtype=np.float64)
        h = _point(h)
        e = np.zeros(2)
        for _ in range(30):
            step = np.linalg.solve(self._residual_jacobian(z, e, h)[:, 2:], self._residual(z, e, h))
            e = e - step
            if np.max(np.abs(step)) <= 1e-15 * (1 + np.max(np.abs(e))):
                break
        return e

    def _solve_box(self, Z, h):
        """Enclosure of E over Z and the box in which it is the unique solution."""
        Z = Interval.coerce(Z)
        h_box = Interval.coerce(h if isinstance(h, Interval) else lift(h, Z))
        guess = self._solve_float(Z.mid(), h)
        D = self._residual_jacobian(Z.mid(), guess, _point(h))
        spread = np.abs(np.linalg.solve(D[:, 2:], D[:, :2])) @ Z.rad()
        radius = 2 * spread + NEWTON_SLACK * (1 + np.abs(guess))
        params = Interval.concatenate([Z, h_box.reshape(1)])

        def F(I, e):
            return self._residual(I[:2], e, I[2])

        def DF(I, E):
            return self._residual_jacobian(I[:2], E, I[2])[:, 2:]

        for _ in range(INFLATION_ATTEMPTS):
            search = Interval(guess - radius, guess + radius)
            outcome = interval_newton_parametrized(F, DF, params, search, x=guess)
            if outcome.verified:
                return outcome.enclosure, search
            logger.debug("%s: E not verified (%s), inflating", self.label, outcome.diagnostic)
            radius = 10 * radius
        raise NewtonFailure(f"{self.label}: could not verify E over {Z!r}")

    def solve_normal(self, Z, h=None):
        """E(z): float for a point, verified enclosure for a box."""
        h = self._h(h)
        if isinstance(Z, Interval):
            return self._solve_box(Z, h)[0]
        return self._solve_float(Z, h)

    def psi(self, z, h=None):
        h = self._h(h)
        if not isinstance(z, Interval):
            z = np.asarray(z, dtype=np.float64)
            return self.w + self.A @ np.concatenate([z, self._solve_float(z, h)])

        E = self._solve_box(z, h)[0]
        direct = self.w_box + self.A_box @ Interval.concatenate([z, E])
        if z.max_width() == 0:
            return direct
        center = z.mid()
        at_center = self.psi(Interval(center), h)
        mean_value = at_center + self.psi_derivative(z, h) @ (z - center)
        tight = direct.intersect(mean_value)
        return direct if tight is None else tight

    def psi_derivative(self, Z, h=None):
        h = self._h(h)
        Z = Interval.coerce(Z)
        E = self._solve_box(Z, h)[0]
        D = self._residual_jacobian(Z, E, h)
        DE = -linear_solve_enclosure(D[:, 2:], D[:, :2])
        return self.A_box[:, :2] + self.A_box[:, 2:] @ DE

    def psi_inverse(self, p, h=None):
        h = self._h(h)
        if not isinstance(p, Interval):
            p = np.asarray(p, dtype=np.float64)[:4]
            return np.linalg.solve(self.A, p - self.w)[:2]

        p = p[:4]
        self._check_level(p, h)
        x = self.A_inv @ (p - self.w_box)
        Z = x[:2]
        _, unique = self._solve_box(Z, h)
        if not x[2:].subset(unique):
            raise OffSection(f"{self.label}: normal coordinates leave the verified branch")
        return Z

    @property
    def inverse_derivative(self):
        return self.A_inv[:2, :]


class Psi0Chart(Chart):
    """Chart on {v = 0} through the collision circle.

    u = d1 (z1 + z2), p_u = d2 (z1 - z2) and p_v solves Gamma_h = 0 on the
    branch p_v > 2u(x_i + u^2), so z1 + z2 = 0 maps onto collisions.
    """

    label = "psi0"

    def __init__(self, h, d1=None, d2=None, scale=CHART_SCALE, params=EARTH_MOON, primary=2):
        super().__init__(h, RegularizedEnergy(params, primary))
        self.params = params
        self.primary = primary
        self.scale = float(scale)
        scale = Fraction(repr(self.scale))
        self.d1 = float(scale * Fraction(d1 or PSI0_D1))
        self.d2 = float(scale * Fraction(d2 or PSI0_D2))
        self.section = CoordinateSection(1, 0.0)
        self.w = self.psi(np.zeros(2), _point(h))

    def with_energy(self, h):
        chart = Psi0Chart.__new__(Psi0Chart)
        chart.__dict__.update(self.__dict__)
        chart.h = h
        chart.w = chart.psi(np.zeros(2), _point(h))
        return chart

    def satisfies_reversing_symmetry(self):
        return True

    def _constants(self, like):
        p = self.params
        return (
            lift(p.position(self.primary), like),
            lift(p.mu(self.primary), like),
            lift(p.mu(p.other(self.primary)), like),
            p.epsilon(self.primary),
        )

    def _coords(self, z):
        if isinstance(z, Interval):
            d1, d2 = Interval(self.d1), Interval(self.d2)
        else:
            z = np.asarray(z, dtype=np.float64)
            d1, d2 = self.d1, self.d2
        return d1 * (z[0] + z[1]), d2 * (z[0] - z[1])

    def radicand(self, u, pu, h):
        xi, mi, mo, eps = self._constants(u)
        h = lift(h, u)
        uu = sqr(u)
        return 4 * uu * sqr(xi + uu) + 8 * mi + 8 * h * uu + 8 * mo * uu / absolute(uu + eps) - sqr(pu)

    def psi(self, z, h=None):
        h = self._h(h)
        if not isinstance(z, Interval) and isinstance(h, Interval):
            h = _point(h)
        u, pu = self._coords(z)
        xi = self._constants(u)[0]
        pv = 2 * u * (xi + sqr(u)) + sqrt(self.radicand(u, pu, h))
        return assemble([u, 0 * u, pu, pv])

    def psi_derivative(self, Z, h=None):
        h = self._h(h)
        rigorous = isinstance(Z, Interval)
        if not rigorous and isinstance(h, Interval):
            h = _point(h)
        u, pu = self._coords(Z)
        xi, _, mo, eps = self._constants(u)
        h = lift(h, u)
        uu = sqr(u)
        shifted = uu + eps
        if rigorous and bool(shifted.contains_zero()):
            raise DomainError(f"{self.label}: u^2 + eps = {shifted!r} changes sign, |u^2 + eps| has no derivative")
        root = sqrt(self.radicand(u, pu, h))
        dR_du = (
            8 * u * sqr(xi + uu)
            + 16 * u * uu * (xi + uu)
            + 16 * h * u
            + 16 * mo * eps * u / (absolute(shifted) * shifted)
        )
        dpv_du = 2 * (xi + uu) + 4 * uu + dR_du / (2 * root)
        dpv_dpu = -pu / root
        d1 = Interval(self.d1) if rigorous else self.d1
        d2 = Interval(self.d2) if rigorous else self.d2
        zero = 0 * d1
        rows = [
            [d1, d1],
            [zero, zero],
            [d2, -d2],
            [dpv_du * d1 + dpv_dpu * d2, dpv_du * d1 - dpv_dpu * d2],
        ]
        if rigorous:
            return Interval.stack([Interval.stack(row) for row in rows])
        return np.array(rows, dtype=np.float64)

    def psi_inverse(self, p, h=None):
        h = self._h(h)
        rigorous = isinstance(p, Interval)
        if rigorous:
            p = p[:4]
            self._check_level(p, h)
            u, pu, pv = p[0], p[2], p[3]
            xi = self._constants(u)[0]
            branch = pv - 2 * u * (xi + sqr(u))
            if not float(branch.lo) > 0:
                raise OffSection(f"{self.label}: p_v branch not verified positive")
            d1, d2 = Interval(self.d1), Interval(self.d2)
        else:
            p = np.asarray(p, dtype=np.float64)
            u, pu = p[0], p[2]
            d1, d2 = self.d1, self.d2
        a, b = u / d1, pu / d2
        return assemble([(a + b) / 2, (a - b) / 2])

    @property
    def inverse_derivative(self):
        a = Interval(1.0) / (2 * Interval(self.d1))
        b = Interval(1.0) / (2 * Interval(self.d2))
        zero = Interval(0.0)
        return Interval.stack([
            Interval.stack([a, zero, b, zero]),
            Interval.stack([a, zero, -b, zero]),
        ])


class MirroredChart(Chart):
    """S psi j: the chart carrying S-images of h-sets on the base chart."""

    def __init__(self, base):
        super().__init__(base.h, base.energy)
        self.base = base
        self.label = f"S{base.label}"
        self.section = base.section.mirrored()
        self.w = symmetry_S(np.asarray(base.w, dtype=np.float64))

    def with_energy(self, h):
        return MirroredChart(self.base.with_energy(h))

    def satisfies_reversing_symmetry(self):
        return self.base.satisfies_reversing_symmetry()

    def psi(self, z, h=None):
        return symmetry_S(self.base.psi(swap(z), self._h(h)))

    def psi_derivative(self, Z, h=None):
        D = self.base.psi_derivative(swap(Z), self._h(h))
        if isinstance(D, Interval):
            return Interval(S_MATRIX) @ D @ Interval(J_SWAP)
        return S_MATRIX @ D @ J_SWAP

    def psi_inverse(self, p, h=None):
        p = p[:4] if isinstance(p, Interval) else np.asarray(p, dtype=np.float64)[:4]
        return swap(self.base.psi_inverse(symmetry_S(p), self._h(h)))

    @property
    def inverse_derivative(self):
        return Interval(J_SWAP) @ self.base.inverse_derivative @ Interval(S_MATRIX)

    def mirrored(self):
        return self.base


def build_generic_chart(w, u_hat, s_hat, h, scale=CHART_SCALE, energy=None, label=None):
    return GenericChart(w, u_hat, s_hat, h, scale=scale, energy=energy, label=label)


def chart_to_phase(chart, z, h=None):
    return chart.psi(z, h)


def phase_to_chart(chart, p, h=None):
    return chart.psi_inverse(p, h)
