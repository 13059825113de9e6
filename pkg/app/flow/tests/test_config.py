"""
Tests for integrator settings.
"""

import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from core.exceptions import ConfigurationError
from flow import IntegratorConfig


class IntegratorConfigTests(SimpleTestCase):
    """Test IntegratorConfig construction and hashing."""

    def test_defaults(self):
        """Test the documented defaults."""
        cfg = IntegratorConfig()

        self.assertEqual(cfg.order, 20)
        self.assertEqual(cfg.tol, 1e-14)
        self.assertEqual(cfg.min_step, 1e-12)

    def test_invalid_values_rejected(self):
        """Test order < 2 and non-positive step or tol are rejected."""
        for bad in ({"order": 1}, {"step": 0.0}, {"tol": -1.0}):
            with self.assertRaises(ConfigurationError):
                IntegratorConfig(**bad)

    @override_settings(INTEGRATOR={"order": 12, "tol": 1e-12})
    def test_from_settings(self):
        """Test settings overrides are applied."""
        cfg = IntegratorConfig.from_settings()

        self.assertEqual(cfg.order, 12)
        self.assertEqual(cfg.tol, 1e-12)

    def test_unknown_key_rejected(self):
        """Test unknown keys raise ConfigurationError."""
        with self.assertRaises(ConfigurationError):
            IntegratorConfig.from_dict({"orders": 3})

    def test_from_file_and_hash(self):
        """Test JSON overlays change the config hash."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "cfg.json"
            path.write_text(json.dumps({"order": 16}))

            cfg = IntegratorConfig.from_file(path)

        self.assertEqual(cfg.order, 16)
        self.assertNotEqual(cfg.config_hash(), cfg.replace(order=17).config_hash())
        self.assertEqual(cfg.config_hash(), IntegratorConfig.from_dict(cfg.as_dict()).config_hash())

    def test_unreadable_file(self):
        """Test a missing file is a configuration error."""
        with self.assertRaises(ConfigurationError):
            IntegratorConfig.from_file("/nonexistent/cfg.json")
