from django.apps import AppConfig


class StickBreakingConfig(AppConfig):
    name = 'stick_breaking'
