"""
URL mappings for the prove app.
"""

from django.urls import (
    path,
    include,
)
from rest_framework.routers import DefaultRouter
from prove import views

router = DefaultRouter()
router.register("runs", views.ProofRunViewSet)
router.register("certificates", views.CertificateRecordViewSet)

app_name = "prove"

urlpatterns = [
    path("", include(router.urls)),
]
