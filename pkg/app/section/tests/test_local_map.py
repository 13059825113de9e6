"""
Tests for local Poincare maps between charts.
"""

import numpy as np

from django.test import SimpleTestCase

from core.exceptions import OffSection
from flow import IntegratorConfig
from ivl import Interval
from model import ConstantField, LinearField
from section import ChartPatch, CoordinateSection, LocalMapEnclosure, crossing_fast, local_poincare

CFG = IntegratorConfig(order=12)


class PlaneChart:
    """psi(z) = (level, z1, z2, 0) on the section {u = level}."""

    def __init__(self, level):
        self.level = level
        self.label = f"u={level}"
        self.section = CoordinateSection(0, level)

    def region(self):
        return None

    def psi(self, z, h=None):
        z = Interval.coerce(z)
        return Interval.stack([0 * z[0] + self.level, z[0], z[1], 0 * z[0]])

    def psi_derivative(self, Z, h=None):
        return Interval([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])

    def psi_inverse(self, p, h=None):
        return Interval.stack([p[1], p[2]])

    @property
    def inverse_derivative(self):
        return Interval([[0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]])


class LocalMapEnclosureTests(SimpleTestCase):
    """Test the mean-value evaluation of a local map enclosure."""

    def setUp(self):
        self.local = LocalMapEnclosure(
            domain=Interval([-1.0, -1.0], [1.0, 1.0]),
            center=np.zeros(2),
            center_image=Interval([0.5, 0.0]),
            derivative=Interval([[2.0, 0.0], [0.0, 0.5]]),
            image=Interval([-1.0, -0.4], [2.0, 0.4]),
            time=Interval(1.0, 2.0),
        )

    def test_mean_value_form(self):
        """Test a sub-box maps by the linear part around the centre."""
        res = self.local(Interval([0.0, 0.0], [0.25, 0.5]))

        self.assertEqual(res.to_pairs(), [[0.5, 1.0], [0.0, 0.25]])

    def test_clipped_by_whole_image(self):
        """Test the result never exceeds the whole-patch image."""
        res = self.local(Interval([-1.0, -1.0], [1.0, 1.0]))

        self.assertEqual(res.to_pairs(), [[-1.0, 2.0], [-0.4, 0.4]])

    def test_box_outside_domain(self):
        """Test evaluating outside the patch raises OffSection."""
        with self.assertRaises(OffSection):
            self.local(Interval([0.5, 0.5], [1.5, 0.6]))


class ChartPatchTests(SimpleTestCase):
    """Test ChartPatch."""

    def test_default_centre_is_midpoint(self):
        """Test the centre defaults to the box midpoint."""
        patch = ChartPatch(PlaneChart(0.0), Interval([0.0, -1.0], [1.0, 1.0]))

        self.assertEqual(patch.center.tolist(), [0.5, 0.0])

    def test_centre_outside_box(self):
        """Test a centre outside the box raises OffSection."""
        with self.assertRaises(OffSection):
            ChartPatch(PlaneChart(0.0), Interval([0.0, 0.0], [1.0, 1.0]), center=[2.0, 0.5])


class LocalPoincareTests(SimpleTestCase):
    """Test local_poincare on a translation between parallel planes."""

    def test_translation_is_identity_in_charts(self):
        """Test the map from u = 0 to u = 1 is the identity with derivative I."""
        box = Interval([0.1, -0.2], [0.3, 0.2])
        field = ConstantField([1.0, 0.0, 0.0, 0.0, 0.0])

        local = local_poincare(PlaneChart(0.0), PlaneChart(1.0), 0.0, box=box, field=field, config=CFG)

        self.assertTrue(box.subset(local.image))
        self.assertLess(local.image.max_width(), 0.4 + 1e-9)
        self.assertTrue(np.all(local.derivative.inflate(1e-12).contains(np.eye(2))))
        self.assertTrue(bool(local.center_image.inflate(1e-12).contains(Interval([0.2, 0.0])).all()))
        self.assertTrue(bool(local.time.contains(1.0)))


ROTATION = LinearField([
    [0.0, 1.0, 0.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.0],
])


def float_local_map(z):
    """(v, pu) where the rotation from (0, z1, z2, 0) first meets u = 1."""
    start = np.array([0.0, z[0], z[1], 0.0, 0.0])
    return crossing_fast(ROTATION, start, CoordinateSection(0, 1.0), CFG).point[1:3]


class LocalPoincareDerivativeTests(SimpleTestCase):
    """Test the derivative enclosure against the float map it encloses."""

    def setUp(self):
        self.box = Interval([1.5, 0.2], [1.501, 0.201])
        self.local = local_poincare(
            PlaneChart(0.0), PlaneChart(1.0), 0.0, box=self.box, field=ROTATION, config=CFG
        )

    def test_contains_finite_differences(self):
        """Test the 2x2 derivative contains the central-difference Jacobian at step 1e-4."""
        z = self.box.mid()
        step = 1e-4
        columns = []
        for j in range(2):
            e = np.zeros(2)
            e[j] = step
            columns.append((float_local_map(z + e) - float_local_map(z - e)) / (2 * step))
        jacobian = np.column_stack(columns)

        self.assertTrue(np.all(self.local.derivative.contains(jacobian)), jacobian)

    def test_contains_exact_jacobian(self):
        """Test the derivative contains d(sqrt(z1^2 - 1), z2 sqrt(z1^2 - 1) / z1) at the centre."""
        z1, z2 = self.box.mid()
        root = np.sqrt(z1 ** 2 - 1)
        exact = np.array([[z1 / root, 0.0], [z2 / (z1 ** 2 * root), root / z1]])

        self.assertTrue(np.all(self.local.derivative.contains(exact)))
        self.assertTrue(np.all(self.local.image.contains(Interval(float_local_map([z1, z2])))))
