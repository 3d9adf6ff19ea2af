"""
App config for the Cartier-Manin matrix of smooth plane quintics in characteristic 2.
"""
# cartier/apps.py
from django.apps import AppConfig


class CartierConfig(AppConfig):
    name = "cartier"
    verbose_name = "Cartier-Manin matrices"
