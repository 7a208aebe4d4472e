from django.apps import AppConfig

class CliRunnerConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'cli_runner'
