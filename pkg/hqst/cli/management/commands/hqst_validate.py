"""Compare the overlap with the integrated amplitude equations."""
import logging
from argparse import ArgumentParser
from typing import List, Tuple

from hqst.analysis import point_probability
from hqst.cli.commands import Rows, ScenarioCommand
from hqst.cli.settings import solver_options
from hqst.constants import ErrorVariable
from hqst.dynamics import simulate_transfer
from hqst.errors import ParseError
from hqst.transform import region, unitary_from_errors
from hqst.utils import seeded_rng

LOGGER = logging.getLogger('hqst.cli')


class Command(ScenarioCommand):
    """Compare the overlap with the integrated amplitude equations."""

    help = 'Compute the success probability at random points of the sweep region by the overlap and by the ODE.'
    name = 'validate'

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--points', type=int, help='Random points, 25 by default.')
        parser.add_argument('--seed', type=int, help='Seed of the points, 0 by default.')
        parser.add_argument('--scale', type=float, help='Scale of the sweep region, 1 by default.')

    def compute(self) -> Tuple[List[str], Rows]:
        count = self.option('points', 'sweep', 'points', int, 25)
        if count < 1:
            raise ParseError('--points must be at least 1, not {}.'.format(count))
        bounds = region(self.option('scale', 'sweep', 'scale', float, 1.0))
        rng = seeded_rng(self.option('seed', 'output', 'seed', int, 0))
        variables = (ErrorVariable.OMEGA0, ErrorVariable.XI, ErrorVariable.T)
        samples = rng.uniform(-1.0, 1.0, size=(count, 3)) * [bounds.bound(variable) for variable in variables]

        reference = self.reference()
        link, ideal = reference.link, reference.ideal
        solver = solver_options()
        dt = self.scenario.get_float('grid', 'overlap_dt', None)
        rows = []
        for x, y, z in samples:
            errors = dict(zip(variables, (x, y, z)))
            overlap = point_probability(reference.beta1, link, ideal, reference.t_l, errors, dt)
            u = unitary_from_errors(ideal, reference.t_l, x, y, z, link.gamma2)
            ode = simulate_transfer(reference.emission, link, u, reference.nominal, solver).transferred
            rows.append([x, y, z, overlap, ode, abs(ode - overlap)])
            LOGGER.debug('Validated (%r, %r, %r): overlap %r, ODE %r.', x, y, z, overlap, ode)

        largest = max(row[-1] for row in rows)
        LOGGER.info('Largest discrepancy of %d points: %r.', count, largest)
        self.stderr.write('max discrepancy: {!r}'.format(largest))
        return ['x', 'y', 'z', 'p_overlap', 'p_ode', 'discrepancy'], rows
