"""
Tests for covering and back-covering checks.
"""

import numpy as np

from django.test import SimpleTestCase

from core.exceptions import ConditionFailed
from cover import (
    CertificateKind,
    Direction,
    HSet,
    check_backcovering,
    check_covering,
    grid_cells,
)
from cover.covering import CONTRACTION, LEFT
from ivl import Interval


class Diagonal:
    """(a x, d y), picklable for worker pools."""

    def __init__(self, a, d):
        self.a = a
        self.d = d

    def __call__(self, z):
        return Interval.stack([self.a * z[0], z[1] * self.d])


def bent(z):
    """(3x, 0.95 y (1 - x x / 10)); x x loses the dependency on wide boxes."""
    return Interval.stack([3 * z[0], 0.95 * z[1] * (1 - z[0] * z[0] / 10)])


class GridTests(SimpleTestCase):
    """Test the covering grid."""

    def test_grid_cells_tile_unit_square(self):
        """Test 4 x 4 cells in row-major order cover N_c."""
        cells = grid_cells(4)

        self.assertEqual(len(cells), 16)
        self.assertEqual(cells[0].to_pairs(), [[-1.0, -0.5], [-1.0, -0.5]])
        self.assertEqual(cells[1].to_pairs(), [[-1.0, -0.5], [-0.5, 0.0]])
        self.assertEqual(cells[-1].to_pairs(), [[0.5, 1.0], [0.5, 1.0]])


class CheckCoveringTests(SimpleTestCase):
    """Test check_covering on linear and nonlinear maps."""

    def setUp(self):
        self.N = HSet.standard("N")
        self.M = HSet.standard("M")

    def test_expanding_contracting_map_covers(self):
        """Test f = (3x, y/2) gives N => M with margins 0.5 and 2."""
        cert = check_covering(Diagonal(3, 0.5), self.N, self.M, leg="P1")

        self.assertEqual(cert.relation_id, "N=>M")
        self.assertEqual(cert.kind, CertificateKind.COVERING)
        self.assertEqual(cert.direction, Direction.FORWARD)
        self.assertEqual(cert.orientation, 1)
        self.assertEqual(cert.leg, "P1")
        self.assertAlmostEqual(cert.contraction_margin, 0.5)
        self.assertAlmostEqual(cert.expansion_margin, 2.0)
        self.assertEqual(cert.depth, 0)
        self.assertEqual(cert.boxes, 16 + 4 + 4)

    def test_weak_expansion_fails_left(self):
        """Test f = (x/2, y/2) fails left expansion."""
        with self.assertRaises(ConditionFailed) as ctx:
            check_covering(Diagonal(0.5, 0.5), self.N, self.M)

        self.assertEqual(ctx.exception.condition, LEFT)

    def test_reversed_orientation(self):
        """Test f = (-3x, y/2) covers with orientation -1."""
        cert = check_covering(Diagonal(-3, 0.5), self.N, self.M)

        self.assertEqual(cert.orientation, -1)

    def test_expanding_entry_fails_contraction(self):
        """Test f = (3x, 1.5y) fails contraction on the first grid cell."""
        with self.assertRaises(ConditionFailed) as ctx:
            check_covering(Diagonal(3, 1.5), self.N, self.M, depth=2)

        self.assertEqual(ctx.exception.condition, CONTRACTION)
        self.assertTrue(ctx.exception.sub_box.subset(grid_cells(4)[0]))

    def test_refinement_rescues_overestimate(self):
        """Test a cell that fails by dependency passes after one dyadic split."""
        with self.assertRaises(ConditionFailed):
            check_covering(bent, self.N, self.M, grid=1, depth=0)

        cert = check_covering(bent, self.N, self.M, grid=1, depth=1)

        self.assertEqual(cert.depth, 1)
        self.assertGreater(cert.boxes, 3)

    def test_affine_target(self):
        """Test coverings are read in the target's affine coordinates."""
        M = HSet(Interval([1.0, 0.0]), Interval([[2.0, 0.0], [0.0, 1.0]]), "M")

        def f(z):
            return Interval.stack([1 + 9 * z[0], z[1] / 4])

        cert = check_covering(f, self.N, M)

        self.assertEqual(cert.relation_id, "N=>M")
        self.assertGreater(cert.expansion_margin, 1.0)

    def test_random_diagonal_maps(self):
        """Test (lx, my) covers exactly when l > 1 and m < 1."""
        rng = np.random.default_rng(5)

        for _ in range(40):
            lam = float(rng.choice([-1, 1]) * rng.uniform(0.2, 4.0))
            mu = float(rng.uniform(0.1, 2.0))
            if abs(abs(lam) - 1) < 0.05 or abs(mu - 1) < 0.05:
                continue
            covers = abs(lam) > 1 and mu < 1
            try:
                check_covering(Diagonal(lam, mu), self.N, self.M, depth=1)
                verdict = True
            except ConditionFailed:
                verdict = False
            self.assertEqual(verdict, covers, (lam, mu))

    def test_workers_agree_with_serial(self):
        """Test a worker pool gives the same certificate counts."""
        serial = check_covering(Diagonal(3, 0.5), self.N, self.M)
        pooled = check_covering(Diagonal(3, 0.5), self.N, self.M, workers=2)

        self.assertEqual(serial.boxes, pooled.boxes)
        self.assertEqual(serial.contraction_margin, pooled.contraction_margin)


class CheckBackCoveringTests(SimpleTestCase):
    """Test back-covering by the transposed inverse."""

    def test_backcovering_from_inverse(self):
        """Test f^-1 = (x/3, 2y) gives N <= M."""
        cert = check_backcovering(Diagonal(1 / 3, 2), HSet.standard("N"), HSet.standard("M"), leg="PS1")

        self.assertEqual(cert.relation_id, "N<=M")
        self.assertEqual(cert.kind, CertificateKind.BACK_COVERING)
        self.assertEqual(cert.direction, Direction.BACK)
        self.assertEqual(cert.source, "N")
        self.assertEqual(cert.target, "M")
        self.assertEqual(cert.leg, "PS1")

    def test_forward_map_is_not_backcovering(self):
        """Test passing the forward map (3x, y/2) fails."""
        with self.assertRaises(ConditionFailed):
            check_backcovering(Diagonal(3, 0.5), HSet.standard("N"), HSet.standard("M"))
