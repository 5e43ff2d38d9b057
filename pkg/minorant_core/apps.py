from django.apps import AppConfig


class MinorantCoreConfig(AppConfig):
    name = 'minorant_core'
