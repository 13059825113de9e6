"""
Tests for the django admin modifications.
"""

from django.test import TestCase
from django.contrib.auth import get_user_model
from django.urls import reverse
from django.test import Client

from core import models


class AdminSiteTests(TestCase):
    """Tests for django admin."""

    def setUp(self):
        """Create admin user, client and a run."""
        self.client = Client()
        self.admin_user = get_user_model().objects.create_superuser(
            username="admin",
            email="admin@example.com",
            password="testpass123",
        )
        self.client.force_login(self.admin_user)
        self.run = models.ProofRun.objects.create(scenario="approach")
        models.CertificateRecord.objects.create(
            run=self.run,
            relation_id="cone:g1",
            kind=models.CertificateRecord.Kind.CONE,
        )

    def test_runs_list(self):
        """Test that runs are listed on page."""
        url = reverse("admin:core_proofrun_changelist")
        res = self.client.get(url)

        self.assertContains(res, self.run.scenario)

    def test_edit_run_page(self):
        """Test the run page lists its certificates."""
        url = reverse("admin:core_proofrun_change", args=(self.run.id,))
        res = self.client.get(url)

        self.assertEqual(res.status_code, 200)
        self.assertContains(res, "cone:g1")

    def test_certificates_list(self):
        """Test the certificates page works"""
        url = reverse("admin:core_certificaterecord_changelist")
        res = self.client.get(url)

        self.assertContains(res, "cone:g1")
