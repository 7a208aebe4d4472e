from django.apps import AppConfig

class FluxQuadratureConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'flux_quadrature'
