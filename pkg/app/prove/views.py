"""
Views for proof run APIs
"""

from drf_spectacular.types import OpenApiTypes
from drf_spectacular.utils import (
    OpenApiParameter,
    extend_schema,
    extend_schema_view,
)
from rest_framework import viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from core.models import CertificateRecord, ProofRun
from prove import serializers


class ProofRunViewSet(viewsets.ReadOnlyModelViewSet):
    """View for stored proof runs."""

    serializer_class = serializers.ProofRunSerializer
    queryset = ProofRun.objects.all()

    def get_queryset(self):
        """Retrieve runs, newest first."""
        return self.queryset.order_by("-started", "-id")

    def get_serializer_class(self):
        """Return the serializer class for request"""
        if self.action == "report":
            return serializers.ProofReportSerializer

        return self.serializer_class

    @action(methods=["GET"], detail=True)
    def report(self, request, pk=None):
        """Full JSON report of a run."""
        run = self.get_object()
        serializer = self.get_serializer(run)
        return Response(serializer.data)


@extend_schema_view(
    list=extend_schema(
        parameters=[
            OpenApiParameter(
                "run",
                OpenApiTypes.INT,
                description="Id of the run to filter by.",
            ),
            OpenApiParameter(
                "kind",
                OpenApiTypes.STR,
                enum=CertificateRecord.Kind.values,
                description="Certificate kind to filter by.",
            ),
        ]
    )
)
class CertificateRecordViewSet(viewsets.ReadOnlyModelViewSet):
    """View for stored certificates."""

    serializer_class = serializers.CertificateRecordDetailSerializer
    queryset = CertificateRecord.objects.all()

    def get_queryset(self):
        """Filter certificates by run and kind."""
        queryset = self.queryset
        run = self.request.query_params.get("run")
        kind = self.request.query_params.get("kind")
        if run and run.isdigit():
            queryset = queryset.filter(run_id=int(run))
        if kind:
            queryset = queryset.filter(kind=kind)

        return queryset.order_by("run", "id")

    def get_serializer_class(self):
        """Return the serializer class for request"""
        if self.action == "list":
            return serializers.CertificateRecordSerializer

        return self.serializer_class
