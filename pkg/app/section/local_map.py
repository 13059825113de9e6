"""
Poincare maps between charts, expressed in chart coordinates.
"""

import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import OffSection
from ivl import Interval
from model.fields import ExtendedRegularizedField
from section.crossing import crossing_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChartPatch:
    """A box of chart coordinates; `center` is the expansion point of the mean-value form."""

    chart: object
    box: Interval
    center: np.ndarray = None

    def __post_init__(self):
        box = Interval.coerce(self.box)
        object.__setattr__(self, "box", box)
        center = box.mid() if self.center is None else np.asarray(self.center, dtype=np.float64)
        if not bool(np.all(box.contains(center))):
            raise OffSection("patch centre lies outside the patch")
        object.__setattr__(self, "center", center)


@dataclass(frozen=True)
class LocalMapEnclosure:
    """Verified enclosure of z -> psi_to^-1(P(psi_from(z))) over a patch."""

    domain: Interval
    center: np.ndarray
    center_image: Interval
    derivative: Interval
    image: Interval
    time: Interval
    steps: int = 0

    def __call__(self, box):
        box = Interval.coerce(box)
        if not box.subset(self.domain):
            raise OffSection(f"{box!r} lies outside the verified patch {self.domain!r}")
        mean_value = self.center_image + self.derivative @ (box - self.center)
        tight = mean_value.intersect(self.image)
        return mean_value if tight is None else tight


def _patch(source, box):
    if isinstance(source, ChartPatch):
        return source
    return ChartPatch(source, box)


def _with_energy(box, h):
    return Interval.concatenate([box, Interval.coerce(h).reshape(1)])


def local_poincare(source, target, h, box=None, field=None, config=None, region=None):
    """Enclose the local map and its 2x2 derivative from a patch of one chart to another.

    `field` defaults to the regularized field with the energy carried as a
    fifth state variable; pass its reversed() for backward legs.
    """
    patch = _patch(source, box)
    chart = patch.chart
    field = field or ExtendedRegularizedField(chart.energy.params, chart.energy.primary)
    region = target.region() if region is None else region
    h = Interval.coerce(h)

    W = _with_energy(chart.psi(patch.box, h), h)
    crossing = crossing_map(field, W, target.section, config=config, want_derivative=True, region=region)
    image = target.psi_inverse(crossing.point[:4], h)

    D_psi = Interval.concatenate([chart.psi_derivative(patch.box, h), Interval.zeros((1, 2))])
    derivative = target.inverse_derivative @ crossing.derivative[:4, :] @ D_psi

    W_center = _with_energy(chart.psi(Interval(patch.center), h), h)
    center_crossing = crossing_map(
        field, W_center, target.section, config=config, want_derivative=False, region=region
    )
    center_image = target.psi_inverse(center_crossing.point[:4], h)

    logger.debug(
        "%s -> %s: image width %.3e, derivative width %.3e",
        chart.label, target.label, image.max_width(), derivative.max_width(),
    )
    return LocalMapEnclosure(
        domain=patch.box,
        center=patch.center,
        center_image=center_image,
        derivative=derivative,
        image=image,
        time=crossing.time,
        steps=crossing.steps + center_crossing.steps,
    )
