from django.apps import AppConfig

class PhaseTracingConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'phase_tracing'
