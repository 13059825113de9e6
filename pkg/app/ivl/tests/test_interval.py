"""
Tests for interval arithmetic.
"""

from fractions import Fraction

import mpmath
import numpy as np

from django.test import SimpleTestCase

from core.exceptions import DivisionByZeroInterval, DomainError, InvalidInterval
from ivl import Interval


def random_nested(rng, n, positive=False):
    """Return a random box X and a random sub-box X' of X."""
    a = rng.uniform(-10, 10, n)
    b = rng.uniform(-10, 10, n)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    if positive:
        lo, hi = np.abs(lo) + 0.5, np.abs(hi) + 1.0 + np.abs(lo)
    t = np.sort(rng.uniform(0, 1, (2, n)), axis=0)
    sub_lo = lo + t[0] * (hi - lo)
    sub_hi = lo + t[1] * (hi - lo)
    sub_lo, sub_hi = np.minimum(sub_lo, sub_hi), np.maximum(sub_lo, sub_hi)
    sub_lo, sub_hi = np.clip(sub_lo, lo, hi), np.clip(sub_hi, lo, hi)
    return Interval(lo, hi), Interval(sub_lo, sub_hi)


class ScalarOpsTests(SimpleTestCase):
    """Test the scalar interval operations."""

    def test_add(self):
        """Test adding two intervals with exact endpoints."""
        res = Interval(1, 2) + Interval(3, 4)

        self.assertEqual((float(res.lo), float(res.hi)), (4.0, 6.0))

    def test_mul_sign_cases(self):
        """Test multiplication enumerates the sign cases."""
        res = Interval(-1, 2) * Interval(3, 4)

        self.assertEqual((float(res.lo), float(res.hi)), (-4.0, 8.0))

    def test_division_by_interval_containing_zero(self):
        """Test dividing by an interval containing zero raises."""
        with self.assertRaises(DivisionByZeroInterval):
            Interval(1, 2) / Interval(-1, 1)

    def test_sqrt_of_negative_raises(self):
        """Test sqrt of a negative interval is a domain error."""
        with self.assertRaises(DomainError):
            Interval(-2, -1).sqrt()

    def test_sqrt_clamp(self):
        """Test clamping lets sqrt accept a box straddling zero."""
        with self.assertRaises(DomainError):
            Interval(-1e-20, 4).sqrt()

        res = Interval(-1e-20, 4).sqrt(clamp=True)

        self.assertEqual(float(res.lo), 0.0)
        self.assertGreaterEqual(float(res.hi), 2.0)

    def test_invalid_endpoints(self):
        """Test lo > hi is rejected."""
        with self.assertRaises(InvalidInterval):
            Interval(2, 1)

    def test_exact_decimal_is_enclosed(self):
        """Test decimal constants are enclosed by adjacent floats."""
        res = Interval.exact("0.1")

        self.assertLessEqual(Fraction(float(res.lo)), Fraction(1, 10))
        self.assertGreaterEqual(Fraction(float(res.hi)), Fraction(1, 10))
        self.assertEqual(float(np.nextafter(res.lo, np.inf)), float(res.hi))

    def test_sqrt_two_against_high_precision(self):
        """Test sqrt(2) enclosure against a 50 digit reference."""
        res = Interval(2.0).sqrt()
        mpmath.mp.dps = 50

        self.assertLessEqual(mpmath.mpf(float(res.lo)), mpmath.sqrt(2))
        self.assertGreaterEqual(mpmath.mpf(float(res.hi)), mpmath.sqrt(2))

    def test_one_third_is_outward_rounded(self):
        """Test 1/3 is enclosed and not collapsed to one float."""
        res = Interval(1.0) / Interval(3.0)

        self.assertLess(Fraction(float(res.lo)), Fraction(1, 3))
        self.assertGreater(Fraction(float(res.hi)), Fraction(1, 3))

    def test_integer_powers(self):
        """Test even and odd powers handle sign changes."""
        even = Interval(-2, 1) ** 2
        odd = Interval(-2, 1) ** 3

        self.assertEqual((float(even.lo), float(even.hi)), (0.0, 4.0))
        self.assertEqual((float(odd.lo), float(odd.hi)), (-8.0, 1.0))

    def test_matrix_vector_product(self):
        """Test interval matrix-vector products."""
        A = Interval([[1.0, 2.0], [3.0, 4.0]])
        x = Interval([1.0, -1.0])

        res = A @ x

        self.assertEqual(res.lo.tolist(), [-1.0, -1.0])
        self.assertEqual(res.hi.tolist(), [-1.0, -1.0])

    def test_numpy_operands_defer_to_interval(self):
        """Test ndarray on the left still produces an interval."""
        res = np.array([1.0, 2.0]) * Interval(0.5, 1.0)

        self.assertIsInstance(res, Interval)
        self.assertEqual(res.hi.tolist(), [1.0, 2.0])


class IntervalPropertyTests(SimpleTestCase):
    """Test containment properties on random inputs."""

    def setUp(self):
        self.rng = np.random.default_rng(20240501)
        self.n = 10_000

    def test_inclusion_monotonicity(self):
        """Test op(X', Y') is inside op(X, Y) for nested inputs."""
        X, Xs = random_nested(self.rng, self.n)
        Y, Ys = random_nested(self.rng, self.n)
        P, Ps = random_nested(self.rng, self.n, positive=True)

        cases = [
            (X + Y, Xs + Ys),
            (X - Y, Xs - Ys),
            (X * Y, Xs * Ys),
            (X / P, Xs / Ps),
            (P.sqrt(), Ps.sqrt()),
            (X.square(), Xs.square()),
            (X ** 3, Xs ** 3),
        ]

        for outer, inner in cases:
            self.assertTrue(inner.subset(outer))

    def test_point_consistency(self):
        """Test point inputs enclose the round-to-nearest result."""
        a = self.rng.uniform(-1e3, 1e3, self.n)
        b = self.rng.uniform(0.5, 1e3, self.n)
        A, B = Interval(a), Interval(b)

        for res, expected in [
            (A + B, a + b),
            (A - B, a - b),
            (A * B, a * b),
            (A / B, a / b),
            (B.sqrt(), np.sqrt(b)),
        ]:
            self.assertTrue(np.all(res.contains(expected)))

    def test_product_encloses_exact_rational(self):
        """Test products enclose the exact rational product."""
        a = self.rng.uniform(-1, 1, 200)
        b = self.rng.uniform(-1, 1, 200)

        res = Interval(a) * Interval(b)

        for i in range(200):
            exact = Fraction(a[i]) * Fraction(b[i])
            self.assertLessEqual(Fraction(float(res.lo[i])), exact)
            self.assertGreaterEqual(Fraction(float(res.hi[i])), exact)

    def test_sum_encloses_exact_sum(self):
        """Test directed summation encloses the exact sum."""
        x = self.rng.uniform(-1, 1, (50, 7)) * 10.0 ** self.rng.integers(-8, 8, (50, 7))

        res = Interval(x).sum(axis=1)

        for i in range(50):
            exact = sum(Fraction(v) for v in x[i])
            self.assertLessEqual(Fraction(float(res.lo[i])), exact)
            self.assertGreaterEqual(Fraction(float(res.hi[i])), exact)
