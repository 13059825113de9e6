"""
Database models
"""

from django.db import models, transaction
from django.utils import timezone


class ProofRun(models.Model):
    """One invocation of a proof scenario."""

    class Status(models.TextChoices):
        PENDING = "pending"
        PASS = "pass"
        FAIL = "fail"
        ERROR = "error"

    scenario = models.CharField(max_length=64)
    config_hash = models.CharField(max_length=64, blank=True)
    status = models.CharField(
        max_length=16,
        choices=Status.choices,
        default=Status.PENDING,
    )
    started = models.DateTimeField(default=timezone.now)
    finished = models.DateTimeField(null=True, blank=True)
    wall_time = models.FloatField(null=True, blank=True)
    report = models.JSONField(default=dict, blank=True)

    def __str__(self):
        return f"{self.scenario} ({self.status})"

    @classmethod
    def record(cls, scenario, report, status, started, wall_time):
        """Save a run and one record per certificate of the report."""
        with transaction.atomic():
            run = cls.objects.create(
                scenario=scenario,
                config_hash=report.config_hash,
                status=status,
                started=started,
                finished=timezone.now(),
                wall_time=wall_time,
                report=report.to_dict(),
            )
            CertificateRecord.objects.bulk_create(
                [CertificateRecord.from_certificate(run, cert) for cert in report.certificates.values()]
            )
        return run


class CertificateRecord(models.Model):
    """A certificate produced by a run."""

    class Kind(models.TextChoices):
        COVERING = "covering"
        BACK_COVERING = "back-covering"
        DERIVED = "derived"
        AVOIDANCE = "avoidance"
        CONE = "cone"
        DISC = "disc"
        H0 = "h0"
        WORD = "word"

    run = models.ForeignKey(
        ProofRun,
        on_delete=models.CASCADE,
        related_name="certificates",
    )
    relation_id = models.CharField(max_length=255)
    kind = models.CharField(max_length=16, choices=Kind.choices)
    source = models.CharField(max_length=255, blank=True)
    target = models.CharField(max_length=255, blank=True)
    direction = models.CharField(max_length=16, blank=True)
    verdict = models.BooleanField(default=True)
    payload = models.JSONField(default=dict)

    def __str__(self):
        return self.relation_id

    @classmethod
    def from_certificate(cls, run, cert):
        direction = getattr(cert.direction, "value", cert.direction)
        return cls(
            run=run,
            relation_id=cert.relation_id,
            kind=getattr(cert.kind, "value", cert.kind),
            source=cert.source or "",
            target=cert.target or "",
            direction=direction or "",
            verdict=bool(cert.verdict),
            payload=cert.to_dict(),
        )
