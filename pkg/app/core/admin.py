"""
Django admin customization.
"""

from django.contrib import admin
from django.utils.translation import gettext_lazy as _

from core import models


class CertificateRecordInline(admin.TabularInline):
    """Certificates listed under their run."""

    model = models.CertificateRecord
    fields = ["relation_id", "kind", "direction", "verdict"]
    readonly_fields = fields
    extra = 0
    can_delete = False
    show_change_link = True


class ProofRunAdmin(admin.ModelAdmin):
    """Define the admin pages for proof runs"""

    ordering = ["-started"]
    list_display = ["id", "scenario", "status", "started", "wall_time"]
    list_filter = ["scenario", "status"]
    fieldsets = [
        [
            _("Run"),
            {
                "fields": [
                    "scenario",
                    "status",
                    "config_hash",
                ]
            },
        ],
        [
            _("Timing"),
            {
                "fields": [
                    "started",
                    "finished",
                    "wall_time",
                ]
            },
        ],
        [
            _("Report"),
            {
                "fields": [
                    "report",
                ]
            },
        ],
    ]
    readonly_fields = ["started", "finished", "wall_time", "config_hash"]
    inlines = [CertificateRecordInline]


class CertificateRecordAdmin(admin.ModelAdmin):
    """Define the admin pages for certificates"""

    ordering = ["run", "relation_id"]
    list_display = ["relation_id", "kind", "source", "target", "verdict", "run"]
    list_filter = ["kind", "verdict"]
    search_fields = ["relation_id"]


admin.site.register(models.ProofRun, ProofRunAdmin)
admin.site.register(models.CertificateRecord, CertificateRecordAdmin)
