"""
App config for the `threefold` management command and its reports.
"""
# cli/apps.py
from django.apps import AppConfig


class CliConfig(AppConfig):
    name = "cli"
    verbose_name = "Command-line runs"
