from django.apps import AppConfig

class GaugeFieldsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gauge_fields'
