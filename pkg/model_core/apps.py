from django.apps import AppConfig

class ModelCoreConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'model_core'
