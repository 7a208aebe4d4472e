from django.apps import AppConfig

class AdiabaticDynamicsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'adiabatic_dynamics'
