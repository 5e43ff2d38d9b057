from django.apps import AppConfig


class LevyModelsConfig(AppConfig):
    name = 'levy_models'
