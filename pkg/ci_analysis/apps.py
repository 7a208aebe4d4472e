from django.apps import AppConfig

class CiAnalysisConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'ci_analysis'
