"""
Tests for the full proof run.
"""

from io import StringIO

from django.core.management import call_command
from django.test import TestCase

from core.models import ProofRun
from core.testing import slow


class FullProofTests(TestCase):
    """Test prove_all end to end with the shipped dataset."""

    @slow
    def test_prove_all(self):
        """Test every theorem passes and the six motion schemas are certified."""
        stdout = StringIO()
        words = ["Oc/Oc", "Oc/A", "A/Oc", "A/A", "A/C", "C/A", "Os/C", "C/Os", "coo"]

        call_command("prove_all", words=words, save=True, stdout=stdout, stderr=StringIO())

        run = ProofRun.objects.get()
        self.assertEqual(run.status, ProofRun.Status.PASS)
        self.assertLessEqual(run.report["scale"], 10)
        self.assertEqual(len(run.report["conclusions"]), len(words))
