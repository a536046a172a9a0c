from django.apps import AppConfig


class CodecConfig(AppConfig):
    name = 'codec'
