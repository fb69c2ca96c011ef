"""Apps of hqst.cli."""

from django.apps import AppConfig

from hqst.cli.settings import check_settings


class CliConfig(AppConfig):
    """Configuration of hqst.cli app."""

    name = 'hqst.cli'
    label = 'hqst_cli'

    def ready(self):
        """Run start-up actions."""
        check_settings()
