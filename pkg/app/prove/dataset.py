"""
The chart dataset: points w_k, directions u_hat_k, s_hat_k and the constants
of the proof.

Numbers are stored as strings, either decimal or hex floats. Exact
constants (masses, scales, shear, cone constants, s1) are read as rationals.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from django.conf import settings

from core.exceptions import ConfigurationError, DatasetError
from cover import ConeBounds, HSet, HSetOnSection
from ivl import Interval
from model import MassParams, check_mass_convention, symmetry_S
from section import GenericChart, MirroredChart, Psi0Chart

logger = logging.getLogger(__name__)

K = 18
SYMMETRY_TOLERANCE = 1e-12
# chart index whose chart is the mirror of chart 1
MIRRORED_CHARTS = {3: 1}
CONE_KEYS = ("a", "b", "c", "alpha", "beta", "rho")


def _number(text):
    text = str(text).strip()
    try:
        if "0x" in text.lower():
            return float.fromhex(text)
        return float(text)
    except ValueError as exc:
        raise DatasetError(f"not a number: {text!r}") from exc


def _exact(text):
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise DatasetError(f"not an exact constant: {text!r}") from exc


def _table(rows, name):
    try:
        table = np.array([[_number(x) for x in row] for row in rows], dtype=np.float64)
    except TypeError as exc:
        raise DatasetError(f"{name}: malformed table") from exc
    if table.ndim != 2 or table.shape[1] != 4:
        raise DatasetError(f"{name}: expected rows of four numbers, got shape {table.shape}")
    return table


def default_path():
    path = Path(settings.PROOF["DATASET"])
    return path if path.is_absolute() else Path(settings.BASE_DIR) / path


@dataclass(frozen=True)
class ChartDataset:
    """Points and directions k = 0..K with the constants of the proof."""

    w: np.ndarray
    u_hat: np.ndarray
    s_hat: np.ndarray
    epsilon: Fraction
    d1: Fraction
    d2: Fraction
    params: MassParams
    primary: int
    s1: Fraction
    h0_guess: float
    shear: Fraction
    cone: dict
    h0: Interval = None
    orbit_refined: bool = False
    source: str = field(default="", compare=False)

    # loading

    @classmethod
    def load(cls, path=None):
        path = Path(path) if path else default_path()
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise DatasetError(f"cannot read dataset {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise DatasetError(f"{path}: invalid JSON: {exc}") from exc
        dataset = cls.from_dict(data, source=str(path))
        logger.info("loaded chart dataset %s (K=%d)", path, dataset.K)
        return dataset

    @classmethod
    def from_dict(cls, data, source=""):
        try:
            cone = {key: _exact(data["cone"][key]) for key in CONE_KEYS}
            h0 = data.get("h0")
            dataset = cls(
                w=_table(data["w"], "w"),
                u_hat=_table(data["u_hat"], "u_hat"),
                s_hat=_table(data["s_hat"], "s_hat"),
                epsilon=_exact(data["epsilon"]),
                d1=_exact(data["d1"]),
                d2=_exact(data["d2"]),
                params=MassParams.from_mu(_exact(data["mu"])),
                primary=int(data["primary"]),
                s1=_exact(data["s1"]),
                h0_guess=_number(data["h0_guess"]),
                shear=_exact(data["shear"]),
                cone=cone,
                h0=None if h0 is None else Interval(_number(h0[0]), _number(h0[1])),
                orbit_refined=bool(data.get("orbit_refined", False)),
                source=source,
            )
        except KeyError as exc:
            raise DatasetError(f"dataset is missing {exc}") from exc
        except ConfigurationError as exc:
            raise DatasetError(str(exc)) from exc
        dataset.validate()
        return dataset

    def validate(self, tol=SYMMETRY_TOLERANCE):
        """Check the table sizes and the S-symmetry relations between rows."""
        rows = self.K + 1
        for name in ("w", "u_hat", "s_hat"):
            if getattr(self, name).shape[0] != rows:
                raise DatasetError(f"{name} must have {rows} rows")
        if self.K != K:
            raise DatasetError(f"expected K={K}, got K={self.K}")
        try:
            check_mass_convention(self.params, self.w[0, 3])
        except ConfigurationError as exc:
            raise DatasetError(str(exc)) from exc
        if np.any(self.w[0, :3] != 0):
            raise DatasetError("w0 must be (0, 0, 0, sqrt(8 mu2))")

        def close(a, b, what):
            if not np.allclose(a, b, rtol=tol, atol=tol):
                raise DatasetError(f"symmetry relation {what} does not hold")

        for k in (0, 2, self.K):
            close(symmetry_S(self.w[k]), self.w[k], f"w{k} = S w{k}")
            close(self.s_hat[k], symmetry_S(self.u_hat[k]), f"s{k} = S u{k}")
        close(self.w[3], symmetry_S(self.w[1]), "w3 = S w1")
        close(self.s_hat[1], symmetry_S(self.u_hat[3]), "s1 = S u3")
        close(self.s_hat[3], symmetry_S(self.u_hat[1]), "s3 = S u1")

        cone = self.cone
        if not 0 < cone["a"] < cone["b"] < 1:
            raise DatasetError("cone constants need 0 < a < b < 1")
        if not 0 < self.s1 < 1:
            raise DatasetError(f"s1 must lie in (0, 1), got {self.s1}")
        logger.debug("dataset symmetry relations hold")

    # access

    @property
    def K(self):
        return self.w.shape[0] - 1

    @property
    def energy(self):
        """h0 enclosure when verified, else the float guess."""
        return self.h0 if self.h0 is not None else self.h0_guess

    def chart(self, k, h=None):
        h = self.energy if h is None else h
        if k == 0:
            return Psi0Chart(
                h,
                d1=self.d1,
                d2=self.d2,
                scale=float(self.epsilon),
                params=self.params,
                primary=self.primary,
            )
        if k in MIRRORED_CHARTS:
            return MirroredChart(self.chart(MIRRORED_CHARTS[k], h))
        return GenericChart(
            self.w[k],
            self.u_hat[k],
            self.s_hat[k],
            h,
            scale=float(self.epsilon),
            label=f"psi{k}",
        )

    def charts(self, h=None):
        return [self.chart(k, h) for k in range(self.K + 1)]

    def hset(self, k, h=None, scale=1.0, chart=None):
        """N_k = (N_c, psi_k), optionally stretched by a global factor."""
        base = HSet.standard(f"N{k}")
        if scale != 1:
            base = base.scaled(scale)
        return HSetOnSection(base, chart or self.chart(k, h))

    def cone_bounds(self):
        c = self.cone
        return ConeBounds(c["alpha"], c["beta"], c["rho"], c["c"], shear=self.shear)

    # refinement

    def with_h0(self, h0):
        return replace(self, h0=Interval.coerce(h0))

    def refined(self, h0, w1, w2, project=None, tail=None):
        """New tables from shooting results, with every symmetry relation imposed exactly.

        Rows 1..3 come from the shooting and the symmetry relations. `tail`
        replaces rows 4..K with a closed pseudo-orbit; otherwise `project`,
        when given, maps the old rows onto the level set of h0.
        """
        w = self.w.copy()
        u_hat = self.u_hat.copy()
        s_hat = self.s_hat.copy()

        w[1] = w1
        w[2] = w2
        if tail is not None:
            tail = np.asarray(tail, dtype=np.float64)
            if tail.shape != w[4:].shape:
                raise DatasetError(f"tail must have shape {w[4:].shape}, got {tail.shape}")
            w[4:] = tail
        elif project is not None:
            for k in range(4, self.K + 1):
                w[k] = project(w[k])
        w[3] = symmetry_S(w[1])
        for k in (0, 2, self.K):
            w[k] = (w[k] + symmetry_S(w[k])) / 2
            s_hat[k] = symmetry_S(u_hat[k])
        w[0] = [0.0, 0.0, 0.0, float(Interval.exact(8 * self.params.mu2).sqrt().mid())]
        s_hat[1] = symmetry_S(u_hat[3])
        s_hat[3] = symmetry_S(u_hat[1])

        refined = replace(
            self, w=w, u_hat=u_hat, s_hat=s_hat, h0_guess=float(h0), h0=None, orbit_refined=tail is not None
        )
        refined.validate()
        return refined

    def to_dict(self, hex_floats=False):
        def fmt(x):
            return float(x).hex() if hex_floats else repr(float(x))

        return {
            "version": 1,
            "epsilon": str(self.epsilon),
            "d1": str(self.d1),
            "d2": str(self.d2),
            "mu": str(self.params.mu1),
            "primary": self.primary,
            "s1": str(self.s1),
            "h0_guess": fmt(self.h0_guess),
            "h0": None if self.h0 is None else [fmt(self.h0.lo), fmt(self.h0.hi)],
            "orbit_refined": self.orbit_refined,
            "shear": str(self.shear),
            "cone": {key: str(value) for key, value in self.cone.items()},
            "w": [[fmt(x) for x in row] for row in self.w],
            "u_hat": [[fmt(x) for x in row] for row in self.u_hat],
            "s_hat": [[fmt(x) for x in row] for row in self.s_hat],
        }

    def dump(self, path, hex_floats=True):
        Path(path).write_text(json.dumps(self.to_dict(hex_floats), indent=2) + "\n")
        logger.info("wrote chart dataset to %s", path)
