"""
Tests for verified linear solves.
"""

import numpy as np

from django.test import SimpleTestCase

from core.exceptions import SingularEnclosure
from ivl import Interval, linear_solve_enclosure, verified_inverse


class LinearSolveTests(SimpleTestCase):
    """Test linear_solve_enclosure."""

    def test_scalar_system(self):
        """Test a 1x1 degenerate system reduces to division."""
        res = linear_solve_enclosure(Interval([[2.0]]), Interval([4.0]))

        self.assertEqual((float(res.lo[0]), float(res.hi[0])), (2.0, 2.0))

    def test_identity(self):
        """Test the identity returns the right-hand side."""
        res = linear_solve_enclosure(Interval(np.eye(2)), Interval([1.0, 2.0]))

        self.assertEqual(res.lo.tolist(), [1.0, 2.0])
        self.assertEqual(res.hi.tolist(), [1.0, 2.0])

    def test_interval_diagonal_matches_corner_matrices(self):
        """Test the solve encloses every corner-matrix solution."""
        A = Interval(
            [[1.9, 0.0], [0.0, 1.9]],
            [[2.1, 0.0], [0.0, 2.1]],
        )
        b = Interval([1.0, 1.0])

        res = linear_solve_enclosure(A, b)

        for d1 in (1.9, 2.1):
            for d2 in (1.9, 2.1):
                self.assertTrue(np.all(res.inflate(1e-15).contains(np.array([1 / d1, 1 / d2]))))
        self.assertLess(float(res.hi[0]), 1 / 1.9 + 1e-12)
        self.assertGreater(float(res.lo[0]), 1 / 2.1 - 1e-12)

    def test_singular_matrix_raises(self):
        """Test a singular midpoint matrix raises SingularEnclosure."""
        with self.assertRaises(SingularEnclosure):
            linear_solve_enclosure(Interval([[1.0, 2.0], [2.0, 4.0]]), Interval([1.0, 1.0]))

    def test_wide_matrix_raises(self):
        """Test a matrix containing singular members is rejected."""
        A = Interval([[-1.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 1.0]])

        with self.assertRaises(SingularEnclosure):
            linear_solve_enclosure(A, Interval([1.0, 1.0]))

    def test_matrix_right_hand_side(self):
        """Test inverse enclosure contains the float inverse."""
        M = np.array([[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.1, 0.3, 2.0]])

        res = verified_inverse(M)

        self.assertTrue(np.all(res.inflate(1e-13).contains(np.linalg.inv(M))))

    def test_random_well_conditioned_systems(self):
        """Test 1000 random systems enclose the float solution."""
        rng = np.random.default_rng(7)

        for _ in range(1000):
            n = int(rng.integers(1, 5))
            M = rng.normal(size=(n, n)) + n * np.eye(n)
            b = rng.normal(size=n)

            res = linear_solve_enclosure(Interval(M), Interval(b))

            x = np.linalg.solve(M, b)
            slack = 1e-12 * (1 + np.max(np.abs(x)))
            self.assertTrue(np.all(res.inflate(slack).contains(x)))
            self.assertLess(res.max_width(), 1e-10 * (1 + np.max(np.abs(x))))
