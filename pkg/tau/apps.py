from django.apps import AppConfig


class TauConfig(AppConfig):
    name = 'tau'
    verbose_name = 'Ramanujan tau toolkit'
