"""Base of the hqst management commands."""
import logging
import sys
from argparse import ArgumentParser
from typing import Any, Iterable, List, Sequence, Tuple

from django.core.exceptions import ImproperlyConfigured
from django.core.management.base import BaseCommand, CommandError

from hqst.cli.output import render_csv, write_csv
from hqst.cli.scenario import Reference, Scenario, build_reference
from hqst.cli.settings import HQST_SETTINGS, configured_jobs
from hqst.errors import HqstError, ParseError
from hqst.utils import available_cores

LOGGER = logging.getLogger('hqst.cli')

VERBOSITY_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO, 3: logging.DEBUG}

Rows = Iterable[Sequence[Any]]


class ScenarioCommand(BaseCommand):
    """
    A command computing a CSV artifact from a scenario.

    Subclasses set ``name`` and implement ``compute``, which returns the header and the rows.
    Usage and configuration errors exit with 1, domain errors with 2.
    """

    name = ''
    runs_sweeps = False

    scenario: Scenario
    options: dict

    def create_parser(self, prog_name: str, subcommand: str, **kwargs: Any) -> ArgumentParser:
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def error(message: str) -> None:
            # argparse exits with 2, the code of domain errors.
            if parser.called_from_command_line:  # type: ignore
                parser.print_usage(sys.stderr)
                parser.exit(1, '{}: error: {}\n'.format(parser.prog, message))
            raise CommandError('Error: {}'.format(message), returncode=1)

        parser.error = error  # type: ignore
        return parser

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--scenario', help='Scenario file (INI).')
        parser.add_argument('--set', action='append', default=[], dest='overrides', metavar='SECTION.KEY=VALUE',
                            help='Override a scenario field.')
        parser.add_argument('--output', help='CSV file, the standard output by default.')
        if self.runs_sweeps:
            parser.add_argument('--jobs', type=int, help='Worker processes, the available cores by default.')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        """Add the arguments of the command."""

    def handle(self, *args: Any, **options: Any) -> None:
        logging.getLogger('hqst').setLevel(VERBOSITY_LEVELS.get(options['verbosity'], logging.DEBUG))
        self.options = options
        try:
            self.scenario = Scenario.load(options['scenario'], options['overrides'])
            LOGGER.info('[%s] Running hqst_%s.', self.scenario.digest, self.name)
            header, rows = self.compute()
            content = render_csv(self.name, self.scenario.digest, header, list(rows))
            write_csv(options['output'] or self.scenario.get_str('output', 'path', None), content, self.stdout)
        except (ParseError, ImproperlyConfigured) as e:
            LOGGER.error('hqst_%s: %s', self.name, e)
            raise CommandError(str(e), returncode=1) from e
        except HqstError as e:
            LOGGER.exception('[%s] hqst_%s failed: %s', self.scenario.digest, self.name, e)
            raise CommandError(str(e), returncode=2) from e

    def compute(self) -> Tuple[List[str], Rows]:
        """Return the header and rows of the artifact."""
        raise NotImplementedError

    @property
    def jobs(self) -> int:
        """Number of worker processes."""
        return configured_jobs(self.options.get('jobs')) or available_cores()

    def reference(self) -> Reference:
        """Design the emission of the scenario with the configured method."""
        return build_reference(self.scenario, HQST_SETTINGS.beta1_method)

    def option(self, name: str, section: str, key: str, convert: Any, default: Any) -> Any:
        """Return a command option, falling back to a scenario field."""
        value = self.options.get(name)
        if value is not None:
            try:
                return convert(value) if isinstance(value, str) else value
            except ValueError as e:
                raise ParseError('--{}: {}'.format(name.replace('_', '-'), e)) from e
        return self.scenario.get(section, key, convert, default)
