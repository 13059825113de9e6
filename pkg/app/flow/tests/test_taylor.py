"""
Tests for the Taylor coefficient tape.
"""

from fractions import Fraction

import numpy as np

from django.test import SimpleTestCase

from flow import TaylorTape
from ivl import Interval
from model import HarmonicField, LinearField, RegularizedField
from model.fields import VectorField


class Reciprocal(VectorField):
    dimension = 1

    def __call__(self, w):
        return [1 / w[0]]


class SquareRoot(VectorField):
    dimension = 1

    def __call__(self, w):
        return [w[0].sqrt()]


def assert_encloses(test, interval, values):
    test.assertTrue(np.all(interval.inflate(1e-15).contains(np.asarray(values, dtype=float))))


class TaylorTapeTests(SimpleTestCase):
    """Test Taylor coefficients of known solutions."""

    def test_harmonic_coefficients(self):
        """Test (cos t, -sin t) from (1, 0)."""
        series = TaylorTape(HarmonicField()).series(Interval([1.0, 0.0]), 6)

        assert_encloses(self, series.coeffs[:, 0], [1, 0, -1 / 2, 0, 1 / 24, 0, -1 / 720, 0])
        assert_encloses(self, series.coeffs[:, 1], [0, -1, 0, 1 / 6, 0, -1 / 120, 0, 1 / 5040])

    def test_linear_gradients_are_matrix_powers(self):
        """Test d x_k / d x0 = M^k / k! for x' = M x."""
        M = np.array([[0.5, 1.0], [-2.0, 0.25]])

        series = TaylorTape(LinearField(M)).series(Interval([0.3, -0.7]), 5, gradient=True)

        power = np.eye(2)
        for k in range(7):
            assert_encloses(self, series.jac[k], power)
            power = power @ M / (k + 1)

    def test_division(self):
        """Test x' = 1/x gives sqrt(1 + 2t)."""
        series = TaylorTape(Reciprocal()).series(Interval([1.0]), 4)

        assert_encloses(self, series.coeffs[:5, 0], [1, 1, -1 / 2, 1 / 2, -5 / 8])

    def test_square_root(self):
        """Test x' = sqrt(x) gives (1 + t/2)^2."""
        series = TaylorTape(SquareRoot()).series(Interval([1.0]), 5, gradient=True)

        assert_encloses(self, series.coeffs[:, 0], [1, 1, 0.25, 0, 0, 0, 0])
        # d/dx0 of (sqrt(x0) + t/2)^2 = 1 + t / (2 sqrt(x0))
        assert_encloses(self, series.jac[:3, 0, 0], [1, 0.5, 0])

    def test_regularized_first_coefficients(self):
        """Test x_1 = f(x0) and x_2 = Df f / 2 for the regularized field."""
        field = RegularizedField(Fraction(-711054, 1000000))
        w = np.array([0.3, 0.5, -0.4, 1.2])

        series = TaylorTape(field).series(Interval(w), 3, gradient=True)

        f = field.evaluate(w)
        Df = field.jacobian(w)
        np.testing.assert_allclose(series.coeffs[1].mid(), f, rtol=1e-12)
        np.testing.assert_allclose(series.coeffs[2].mid(), Df @ f / 2, rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(series.jac[1].mid(), Df, rtol=1e-9, atol=1e-12)

    def test_box_coefficients_enclose_point_coefficients(self):
        """Test coefficients on a box enclose those at points of the box."""
        tape = TaylorTape(RegularizedField(-0.7))
        box = Interval([0.3, 0.5, -0.4, 1.2], [0.301, 0.501, -0.399, 1.201])
        outer = tape.series(box, 8)
        rng = np.random.default_rng(5)

        for w in rng.uniform(box.lo, box.hi, (10, 4)):
            inner = tape.series(Interval(w), 8)
            self.assertTrue(inner.coeffs.subset(outer.coeffs))
