"""
App config for L-polynomials, the Prym factor and the threefold point-count identity.
"""
# zeta/apps.py
from django.apps import AppConfig


class ZetaConfig(AppConfig):
    name = "zeta"
    verbose_name = "Zeta functions and point counts"
