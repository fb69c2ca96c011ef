"""Sweep the success probability over one or two error variables."""
import logging
from argparse import ArgumentParser
from typing import List, Optional, Tuple

import numpy as np

from hqst.analysis import SweepAxis, fwhm, sweep
from hqst.cli.commands import Rows, ScenarioCommand
from hqst.cli.settings import solver_options
from hqst.constants import ErrorVariable
from hqst.errors import BoundaryError, ParseError
from hqst.utils import parse_range

LOGGER = logging.getLogger('hqst.cli')
VARIABLES = [variable.value for variable in ErrorVariable]


class Command(ScenarioCommand):
    """Sweep the success probability over one or two error variables."""

    help = 'Sweep the success probability over one or two error variables of the unitary.'
    name = 'sweep'
    runs_sweeps = True

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--axis', choices=VARIABLES, help='The first error variable.')
        parser.add_argument('--range', help='Samples of the first variable, start:stop:num.')
        parser.add_argument('--axis2', choices=VARIABLES, help='The second error variable.')
        parser.add_argument('--range2', help='Samples of the second variable, start:stop:num.')
        parser.add_argument('--cross-check', type=int, default=0, metavar='N',
                            help='Integrate an N x N subsample by the ODE and report the largest discrepancy.')

    def axis(self, suffix: str, required: bool) -> Optional[SweepAxis]:
        """Return the sweep axis given by the options or the scenario."""
        variable = self.option('axis' + suffix, 'sweep', 'axis' + suffix, ErrorVariable, None)
        samples = self.option('range' + suffix, 'sweep', 'range' + suffix, parse_range, None)
        if variable is None or samples is None:
            if required or variable is not None or samples is not None:
                raise ParseError('Sweep axis{} requires both --axis{} and --range{}.'.format(suffix, suffix, suffix))
            return None
        return SweepAxis.linspace(variable, *samples)

    def compute(self) -> Tuple[List[str], Rows]:
        axes = [self.axis('', True)]
        second = self.axis('2', False)
        if second is not None:
            if second.variable == axes[0].variable:
                raise ParseError('The sweep axes must differ, both are {}.'.format(second.variable.value))
            axes.append(second)
        fixed = {variable: self.scenario.get_float('sweep', variable.value, 0.0)
                 for variable in ErrorVariable if variable not in (axis.variable for axis in axes)}

        reference = self.reference()
        result = sweep(reference.beta1, reference.link, reference.ideal, axes, reference.t_l, fixed=fixed,
                       jobs=self.jobs, dt=self.scenario.get_float('grid', 'overlap_dt', None),
                       emission=reference.emission, cross_check=self.options['cross_check'],
                       solver=solver_options())
        if result.discrepancy is not None:
            self.stderr.write('max discrepancy: {!r}'.format(result.discrepancy))

        if second is None:
            try:
                LOGGER.info('FWHM of the %s sweep: %r.', axes[0].variable.value, fwhm(axes[0].values, result.values))
            except BoundaryError as e:
                LOGGER.debug('No FWHM of the %s sweep: %s', axes[0].variable.value, e)
            return [axes[0].variable.value, 'p_success'], zip(axes[0].values, result.values)

        first_values, second_values = np.meshgrid(axes[0].values, second.values, indexing='ij')
        return ([axes[0].variable.value, second.variable.value, 'p_success'],
                zip(first_values.ravel(), second_values.ravel(), result.values.ravel()))
