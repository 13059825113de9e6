# Generated by Django 5.2.4 on 2026-10-19 09:12

import django.db.models.deletion
import django.utils.timezone
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ProofRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("scenario", models.CharField(max_length=64)),
                ("config_hash", models.CharField(blank=True, max_length=64)),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("pending", "Pending"),
                            ("pass", "Pass"),
                            ("fail", "Fail"),
                            ("error", "Error"),
                        ],
                        default="pending",
                        max_length=16,
                    ),
                ),
                ("started", models.DateTimeField(default=django.utils.timezone.now)),
                ("finished", models.DateTimeField(blank=True, null=True)),
                ("wall_time", models.FloatField(blank=True, null=True)),
                ("report", models.JSONField(blank=True, default=dict)),
            ],
        ),
        migrations.CreateModel(
            name="CertificateRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("relation_id", models.CharField(max_length=255)),
                (
                    "kind",
                    models.CharField(
                        choices=[
                            ("covering", "Covering"),
                            ("back-covering", "Back Covering"),
                            ("derived", "Derived"),
                            ("avoidance", "Avoidance"),
                            ("cone", "Cone"),
                            ("disc", "Disc"),
                            ("h0", "H0"),
                            ("word", "Word"),
                        ],
                        max_length=16,
                    ),
                ),
                ("source", models.CharField(blank=True, max_length=255)),
                ("target", models.CharField(blank=True, max_length=255)),
                ("direction", models.CharField(blank=True, max_length=16)),
                ("verdict", models.BooleanField(default=True)),
                ("payload", models.JSONField(default=dict)),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="certificates",
                        to="core.proofrun",
                    ),
                ),
            ],
        ),
    ]
