"""
App config for quadratic spaces over finite fields and their generators.
"""
# quadrics/apps.py
from django.apps import AppConfig


class QuadricsConfig(AppConfig):
    name = "quadrics"
    verbose_name = "Quadrics and generators"
