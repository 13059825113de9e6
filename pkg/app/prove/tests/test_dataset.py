"""
Tests for the chart dataset.
"""

import copy
import json
from dataclasses import replace
from fractions import Fraction

import numpy as np

from django.test import SimpleTestCase

from core.exceptions import DatasetError
from ivl import Interval
from model import symmetry_S
from prove.dataset import ChartDataset, default_path
from section import GenericChart, MirroredChart, Psi0Chart


def raw_tables():
    return json.loads(default_path().read_text())


class DatasetLoadTests(SimpleTestCase):
    """Test loading the shipped tables."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.dataset = ChartDataset.load()

    def test_shapes_and_constants(self):
        """Test the tables hold K + 1 = 19 rows and the exact constants."""
        dataset = self.dataset

        self.assertEqual(dataset.K, 18)
        self.assertEqual(dataset.w.shape, (19, 4))
        self.assertEqual(dataset.s1, Fraction(58696, 65536))
        self.assertEqual(dataset.params.mu2, Fraction(81, 82))
        self.assertEqual(dataset.cone["a"], Fraction(1, 256))
        self.assertEqual(dataset.cone["b"], Fraction(255, 256))

    def test_symmetry_relations(self):
        """Test the S-fixed rows and the mirrored pair w1, w3."""
        dataset = self.dataset

        for k in (0, 2, dataset.K):
            np.testing.assert_allclose(symmetry_S(dataset.w[k]), dataset.w[k], atol=1e-12)
        np.testing.assert_allclose(dataset.w[3], symmetry_S(dataset.w[1]), atol=1e-12)
        np.testing.assert_allclose(dataset.s_hat[1], symmetry_S(dataset.u_hat[3]), atol=1e-12)

    def test_chart_types(self):
        """Test chart 0 is psi0, chart 3 the mirror of chart 1 and the rest generic."""
        dataset = self.dataset

        self.assertIsInstance(dataset.chart(0), Psi0Chart)
        self.assertIsInstance(dataset.chart(3), MirroredChart)
        self.assertEqual(dataset.chart(3).label, "Spsi1")
        self.assertIsInstance(dataset.chart(5), GenericChart)
        self.assertEqual(dataset.chart(5).label, "psi5")

    def test_hset_labels(self):
        """Test N_k carries its label and scale."""
        N = self.dataset.hset(4)

        self.assertEqual(N.hset.label, "N4")
        self.assertEqual(N.chart.label, "psi4")

    def test_energy_prefers_enclosure(self):
        """Test energy is the guess until an h0 enclosure is attached."""
        dataset = self.dataset
        self.assertEqual(dataset.energy, dataset.h0_guess)

        verified = dataset.with_h0(Interval(-0.7110551, -0.7110550))

        self.assertIs(verified.energy, verified.h0)


class DatasetValidationTests(SimpleTestCase):
    """Test malformed datasets are rejected."""

    def test_missing_key(self):
        """Test a dataset without s1 raises DatasetError."""
        data = raw_tables()
        del data["s1"]

        with self.assertRaises(DatasetError):
            ChartDataset.from_dict(data)

    def test_broken_symmetry(self):
        """Test moving w2 off {v = 0} breaks the S-fixed relation."""
        data = raw_tables()
        data["w"][2][1] = "0.001"

        with self.assertRaises(DatasetError):
            ChartDataset.from_dict(data)

    def test_wrong_mass(self):
        """Test regularizing the wrong primary fails the mass convention."""
        data = raw_tables()
        data["mu"] = "81/82"

        with self.assertRaises(DatasetError):
            ChartDataset.from_dict(data)

    def test_short_table(self):
        """Test a table with a missing row is rejected."""
        data = raw_tables()
        for name in ("w", "u_hat", "s_hat"):
            data[name] = data[name][:-1]

        with self.assertRaises(DatasetError):
            ChartDataset.from_dict(data)

    def test_not_a_number(self):
        """Test a malformed entry raises DatasetError."""
        data = raw_tables()
        data["w"][5][0] = "one"

        with self.assertRaises(DatasetError):
            ChartDataset.from_dict(data)

    def test_hex_floats(self):
        """Test hex float entries read back to the same doubles."""
        data = raw_tables()
        dataset = ChartDataset.from_dict(data)
        hexed = copy.deepcopy(data)
        hexed["w"] = [[float(x).hex() for x in row] for row in dataset.w]

        self.assertTrue(np.array_equal(ChartDataset.from_dict(hexed).w, dataset.w))


class DatasetRefinementTests(SimpleTestCase):
    """Test rebuilding the tables around new shooting data."""

    def test_refined_imposes_symmetry(self):
        """Test w3 = S w1 and S w2 = w2 hold exactly after refinement."""
        dataset = ChartDataset.load()
        w1 = dataset.w[1] + 1e-9
        w2 = dataset.w[2].copy()
        w2[1] = 1e-13

        refined = dataset.refined(dataset.h0_guess, w1, w2)

        self.assertTrue(np.array_equal(refined.w[3], symmetry_S(refined.w[1])))
        self.assertTrue(np.array_equal(symmetry_S(refined.w[2]), refined.w[2]))
        self.assertIsNone(refined.h0)

    def test_tail_replaces_rows(self):
        """Test a tail replaces w4..wK and marks the tables refined."""
        dataset = ChartDataset.load()
        tail = dataset.w[4:] + 1e-9
        tail[-1, 1:3] = 0.0

        refined = dataset.refined(dataset.h0_guess, dataset.w[1], dataset.w[2], tail=tail)

        np.testing.assert_array_equal(refined.w[4:-1], tail[:-1])
        self.assertTrue(refined.orbit_refined)
        self.assertFalse(dataset.refined(dataset.h0_guess, dataset.w[1], dataset.w[2]).orbit_refined)

    def test_tail_shape_checked(self):
        """Test a tail with the wrong number of rows is rejected."""
        dataset = ChartDataset.load()

        with self.assertRaises(DatasetError):
            dataset.refined(dataset.h0_guess, dataset.w[1], dataset.w[2], tail=dataset.w[5:])

    def test_refined_flag_written(self):
        """Test the refined flag is written and defaults to False when absent."""
        dataset = ChartDataset.load()
        data = replace(dataset, orbit_refined=True).to_dict(hex_floats=True)

        self.assertTrue(data["orbit_refined"])
        self.assertTrue(ChartDataset.from_dict(data).orbit_refined)
        del data["orbit_refined"]
        self.assertFalse(ChartDataset.from_dict(data).orbit_refined)
