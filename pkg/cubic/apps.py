"""
App config for cubic threefolds, their rational lines and good-line frames.
"""
# cubic/apps.py
from django.apps import AppConfig


class CubicConfig(AppConfig):
    name = "cubic"
    verbose_name = "Cubic threefolds"
