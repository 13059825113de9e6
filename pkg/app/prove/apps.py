from django.apps import AppConfig


class ProveConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "prove"
