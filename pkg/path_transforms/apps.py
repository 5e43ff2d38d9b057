from django.apps import AppConfig


class PathTransformsConfig(AppConfig):
    name = 'path_transforms'
