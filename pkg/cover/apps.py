"""
App config for the double cover of the discriminant curve and its point counts.
"""
# cover/apps.py
from django.apps import AppConfig


class CoverConfig(AppConfig):
    name = "cover"
    verbose_name = "Discriminant double covers"
