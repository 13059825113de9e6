"""
Tests for the eta shear.
"""

from fractions import Fraction

import numpy as np

from django.test import SimpleTestCase

from core.exceptions import ConfigurationError
from ivl import Interval
from section import eta_matrix, eta_shear

SQUARE = Interval([-1.0, -1.0], [1.0, 1.0])


class EtaShearTests(SimpleTestCase):
    """Test eta_shear and eta_matrix."""

    def test_inverse_contains_identity(self):
        """Test eta_{-L} of eta_L(Z) contains Z."""
        rng = np.random.default_rng(3)
        for _ in range(100):
            lo = rng.uniform(-1, 0.9, 2)
            box = Interval(lo, lo + rng.uniform(0, 0.1, 2))
            L = float(rng.uniform(-0.5, 0.5))

            res = eta_shear(eta_shear(box, L), L, inverse=True)

            self.assertTrue(box.subset(res))

    def test_square_maps_into_square(self):
        """Test eta_L(N_c) lies in N_c for L = 0.0039."""
        res = eta_shear(SQUARE, "0.0039")

        self.assertTrue(res.subset(SQUARE.inflate(1e-14)))
        for corner in ([1.0, -1.0], [-1.0, 1.0]):
            np.testing.assert_allclose(eta_shear(np.array(corner), "0.0039"), corner, atol=1e-15)

    def test_zero_shear_is_identity(self):
        """Test eta_0 is exactly the identity."""
        M = eta_matrix(0)

        self.assertEqual(M.lo.tolist(), [[1.0, 0.0], [0.0, 1.0]])
        self.assertEqual(M.hi.tolist(), [[1.0, 0.0], [0.0, 1.0]])

    def test_matrix_encloses_exact_entries(self):
        """Test the matrix entries enclose 1/(1+L) and -L/(1+L)."""
        L = Fraction(39, 10000)
        M = eta_matrix(L)

        self.assertLessEqual(Fraction(float(M.lo[0, 0])), 1 / (1 + L))
        self.assertGreaterEqual(Fraction(float(M.hi[0, 1])), -L / (1 + L))

    def test_shear_out_of_range(self):
        """Test |L| >= 1 raises ConfigurationError."""
        with self.assertRaises(ConfigurationError):
            eta_matrix(1)
