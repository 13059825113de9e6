"""
Tests for orbit traces.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from django.test import SimpleTestCase

from core.exceptions import ConfigurationError
from core.testing import slow
from flow import read_trace
from model import ExtendedRegularizedField, Frame, symmetry_S
from prove.dataset import ChartDataset
from prove.tracing import start_point, trace_orbit
from section import crossing_fast


class StartPointTests(SimpleTestCase):
    """Test how starts are resolved."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.dataset = ChartDataset.load()

    def test_dataset_rows(self):
        """Test wk picks a dataset row."""
        np.testing.assert_array_equal(start_point(self.dataset, "w5"), self.dataset.w[5])

    def test_row_out_of_range(self):
        """Test rows past K are rejected."""
        with self.assertRaises(ConfigurationError):
            start_point(self.dataset, "w19")

    def test_unknown_start(self):
        """Test a start that is neither a row nor a file is rejected."""
        with self.assertRaises(ConfigurationError):
            start_point(self.dataset, "moon")

    def test_standard_frame_file(self):
        """Test a rotating-frame start is lifted to the regularized frame."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "start.json"
            path.write_text(json.dumps({"w": [-0.5, 0.2, 0.1, -0.3], "frame": "std"}))
            w = start_point(self.dataset, str(path))

        self.assertEqual(w.shape, (4,))
        self.assertGreater(w[0] ** 2 + w[1] ** 2, 0)


class TraceTests(SimpleTestCase):
    """Test traces of the regularized flow."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.dataset = ChartDataset.load()

    def test_reversibility(self):
        """Test the S-image of the end point traces back to the start."""
        forward = trace_orbit(self.dataset, "w5", Frame.REG, 0.05, samples=11)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "start.json"
            path.write_text(json.dumps(symmetry_S(forward.states[-1]).tolist()))
            backward = trace_orbit(self.dataset, str(path), Frame.REG, 0.05, samples=11)

        np.testing.assert_allclose(symmetry_S(backward.states[-1]), self.dataset.w[5], atol=1e-9)

    def test_standard_frame_skips_collision(self):
        """Test the collision start has no rotating-frame sample."""
        trace = trace_orbit(self.dataset, "w0", Frame.STD, 0.05, samples=11)

        self.assertEqual(len(trace), 10)
        self.assertEqual(trace.frame, Frame.STD)

    def test_csv(self):
        """Test a written trace reads back with its frame tag."""
        trace = trace_orbit(self.dataset, "w2", Frame.REG, 0.02, samples=5)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "orbit.csv"
            trace.write(path)
            times, states, frames = read_trace(path)

        self.assertEqual(len(times), 5)
        self.assertEqual(set(frames), {"reg"})
        np.testing.assert_allclose(states[0], self.dataset.w[2])

    def test_non_positive_duration(self):
        """Test the duration must be positive."""
        with self.assertRaises(ConfigurationError):
            trace_orbit(self.dataset, "w2", Frame.REG, 0.0)


class HomoclinicTraceTests(SimpleTestCase):
    """Test the rotating-frame picture of the orbit through w4..wK."""

    @slow
    def test_passes_moon_outside_radius(self):
        """Test the trace comes within 1e-2 of (x1, 0) but never within 1e-3."""
        dataset = ChartDataset.load()
        field = ExtendedRegularizedField(dataset.params, dataset.primary)
        moon = float(dataset.params.position(1))
        closest = np.inf
        for k in range(5, dataset.K + 1):
            chart = dataset.chart(k)
            start = np.concatenate([dataset.w[k - 1], [dataset.h0_guess]])
            leg = crossing_fast(field, start, chart.section, region=chart.region())
            trace = trace_orbit(dataset, f"w{k - 1}", Frame.STD, leg.time, samples=20001)
            distance = np.hypot(trace.states[:, 0] - moon, trace.states[:, 1])
            closest = min(closest, float(distance.min()))

        self.assertGreater(closest, 1e-3)
        self.assertLess(closest, 1e-2)
