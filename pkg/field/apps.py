"""
App config for exact finite-field arithmetic.
"""
# field/apps.py
from django.apps import AppConfig


class FieldConfig(AppConfig):
    name = "field"
    verbose_name = "Finite fields"
