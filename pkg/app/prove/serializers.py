"""
Serializers for proof run APIs
"""

from rest_framework import serializers

from core.models import CertificateRecord, ProofRun


class CertificateRecordSerializer(serializers.ModelSerializer):
    """Serializer for certificates."""

    class Meta:
        model = CertificateRecord
        fields = [
            "id",
            "run",
            "relation_id",
            "kind",
            "source",
            "target",
            "direction",
            "verdict",
        ]
        read_only_fields = fields


class CertificateRecordDetailSerializer(CertificateRecordSerializer):
    """Serializer for certificate detail view."""

    class Meta(CertificateRecordSerializer.Meta):
        fields = CertificateRecordSerializer.Meta.fields + ["payload"]
        read_only_fields = fields


class ProofRunSerializer(serializers.ModelSerializer):
    """Serializer for proof runs."""

    certificate_count = serializers.IntegerField(
        source="certificates.count",
        read_only=True,
    )

    class Meta:
        model = ProofRun
        fields = [
            "id",
            "scenario",
            "config_hash",
            "status",
            "started",
            "finished",
            "wall_time",
            "certificate_count",
        ]
        read_only_fields = fields


class ProofReportSerializer(serializers.ModelSerializer):
    """Serializer for the stored report of a run."""

    class Meta:
        model = ProofRun
        fields = ["id", "scenario", "status", "report"]
        read_only_fields = fields
