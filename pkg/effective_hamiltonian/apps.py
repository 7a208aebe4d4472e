from django.apps import AppConfig

class EffectiveHamiltonianConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'effective_hamiltonian'
