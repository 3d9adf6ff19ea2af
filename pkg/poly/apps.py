"""
App config for sparse polynomials, the form parser and Groebner bases.
"""
# poly/apps.py
from django.apps import AppConfig


class PolyConfig(AppConfig):
    name = "poly"
    verbose_name = "Polynomials and ideals"
