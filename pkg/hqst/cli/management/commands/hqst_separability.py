"""Separability indices of pairs of error variables."""
from argparse import ArgumentParser
from typing import List, Tuple

from hqst.analysis import PAIRS, random_matrix_baseline, region_scaling_curve, separability_table
from hqst.cli.commands import Rows, ScenarioCommand
from hqst.constants import REGION_POINTS, ErrorVariable
from hqst.errors import ParseError

Pair = Tuple[ErrorVariable, ErrorVariable]


def parse_pair(value: str) -> Pair:
    """Parse a pair of error variables, e.g. ``T,xi``."""
    names = [name.strip() for name in value.split(',')]
    if len(names) != 2 or names[0] == names[1]:
        raise ValueError('Expected two different error variables, e.g. T,xi, not {!r}.'.format(value))
    return ErrorVariable(names[0]), ErrorVariable(names[1])


def parse_scales(value: str) -> List[float]:
    """Parse comma-separated region scales."""
    scales = [float(item) for item in value.split(',')]
    if any(scale <= 0 for scale in scales):
        raise ValueError('Region scales must be positive, not {!r}.'.format(value))
    return scales


class Command(ScenarioCommand):
    """Separability indices of pairs of error variables."""

    help = 'Compute the separability index of pairs of error variables over the sweep region.'
    name = 'separability'
    runs_sweeps = True

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--pair', help='Pair of error variables, e.g. T,xi. All pairs by default.')
        parser.add_argument('--points', type=int, help='Samples per variable, 121 by default.')
        parser.add_argument('--scale', help='Scale of the sweep region, 2 by default; a list with --closed-form.')
        parser.add_argument('--zero-mean', action='store_true', help='Subtract the mean before the decomposition.')
        parser.add_argument('--closed-form', action='store_true',
                            help='Use the closed-form probability of the exponential photon.')
        parser.add_argument('--random', type=int, metavar='N',
                            help='Separability of uniformly random N x N matrices instead.')
        parser.add_argument('--trials', type=int, default=50, help='Random matrices with --random.')

    def compute(self) -> Tuple[List[str], Rows]:
        zero_mean = self.options['zero_mean']
        if self.options['random'] is not None:
            baseline = random_matrix_baseline(self.options['random'], self.options['trials'], self.scenario.seed)
            return (['n', 'trials', 'mean', 'std', 'mean_zero_mean'],
                    [[self.options['random'], self.options['trials'], baseline.mean, baseline.std,
                      baseline.zero_mean]])

        pair = self.option('pair', 'sweep', 'pair', parse_pair, None)
        pairs = PAIRS if pair is None else [pair]
        scales = self.option('scale', 'sweep', 'scale', parse_scales, [2.0])
        header = ['first', 'second', 'scale', 'points', 'separability']

        if self.options['closed_form']:
            rows = []
            for first, second in pairs:
                curve = region_scaling_curve(scales, (first, second), zero_mean)
                rows.extend([first.value, second.value, scale, int(round((REGION_POINTS - 1) * scale)) + 1, value]
                            for scale, value in zip(scales, curve))
            return header, rows

        if len(scales) != 1:
            raise ParseError('--scale takes a list of scales only with --closed-form.')
        points = self.option('points', 'sweep', 'points', int, 121)
        if points < 2:
            raise ParseError('--points must be at least 2, not {}.'.format(points))
        reference = self.reference()
        table = separability_table(reference.beta1, reference.link, reference.ideal, reference.t_l, scale=scales[0],
                                   points=points, jobs=self.jobs, pairs=pairs,
                                   dt=self.scenario.get_float('grid', 'overlap_dt', None))
        return header, [[first.value, second.value, scales[0], points, indices[1 if zero_mean else 0]]
                        for (first, second), indices in table.items()]
