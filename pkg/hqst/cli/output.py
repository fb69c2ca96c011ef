"""CSV artifacts of the commands."""
import csv
import io
import logging
import os
from numbers import Integral, Real
from typing import Any, Iterable, Optional, Sequence, TextIO

import numpy as np

from hqst.cli.settings import HQST_SETTINGS

LOGGER = logging.getLogger('hqst.cli')

UNITS = 'gamma2'


def format_value(value: Any) -> str:
    """Format a cell; reals use the shortest representation that round-trips."""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Real):
        return repr(float(value))
    return str(value)


def render_csv(command: str, scenario_digest: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Render a CSV artifact.

    The first line is a comment naming the command, the units and the scenario hash,
    followed by the header row and the data rows.
    """
    buffer = io.StringIO()
    buffer.write('# hqst {} units={} scenario={}\n'.format(command, UNITS, scenario_digest))
    writer = csv.writer(buffer, delimiter=',', lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


def output_path(path: Optional[str]) -> Optional[str]:
    """Return the file to write to, or None for the standard output."""
    if path is None or path == '-':
        return None
    if os.path.isabs(path):
        return path
    return os.path.join(HQST_SETTINGS.output_dir, path)


def write_csv(path: Optional[str], content: str, stdout: TextIO) -> None:
    """Write a rendered artifact to a file, or to ``stdout`` when ``path`` is None."""
    target = output_path(path)
    if target is None:
        stdout.write(content)
        return
    with open(target, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(content)
    LOGGER.info('Wrote %s.', target)
