"""Expected number of trials of the heralded controlled-Z gate."""
import math
from argparse import ArgumentParser
from typing import List, Tuple

import numpy as np

from hqst.budget import (EczChannel, ecz_both_errors_trials, ecz_expected_trials, ecz_general_fidelity,
                         ecz_step_probabilities, ecz_trials_stddev, ecz_worst_case_trials, en_vs_psuccess_curve,
                         psuccess_for_trials)
from hqst.cli.commands import Rows, ScenarioCommand
from hqst.cli.scenario import REQUIRED
from hqst.errors import DivergenceError
from hqst.utils import parse_range

CHANNEL_FIELDS = ('alpha', 'beta', 'upsilon1', 'upsilon2', 'alpha_t', 'beta_t', 'upsilon1_t', 'upsilon2_t')


def parse_epsilon(value: str) -> np.ndarray:
    """Parse a photon loss or a range of them, ``start:stop:num``."""
    if ':' in value:
        return np.linspace(*parse_range(value))
    return np.array([float(value)])


def diverging(function, *args) -> float:
    """Return ``function(*args)``, infinite where it diverges."""
    try:
        return function(*args)
    except DivergenceError:
        return math.inf


class Command(ScenarioCommand):
    """Expected number of trials of the heralded controlled-Z gate."""

    help = 'Compute the expected number of trials of the heralded controlled-Z gate.'
    name = 'ecz'

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--eps', help='Photon loss, or a range start:stop:num.')
        parser.add_argument('--curve', action='store_true',
                            help='Expected trials against the bare success probability for the [budget] c0 and x.')
        parser.add_argument('--trials', type=float,
                            help='With --curve, the bare success probability reaching this many trials instead.')
        parser.add_argument('--channel', action='store_true', help='Track the [ecz] amplitudes through a trial.')

    def compute(self) -> Tuple[List[str], Rows]:
        if self.options['channel']:
            return self.channel()
        if self.options['curve']:
            return self.curve()
        epsilons = self.option('eps', 'ecz', 'eps', parse_epsilon, np.linspace(0.0, 1.0, 101))
        rows = []
        for epsilon in epsilons:
            worst = diverging(ecz_worst_case_trials, epsilon)
            stddev = diverging(ecz_trials_stddev, 1 / worst) if worst != math.inf else math.inf
            rows.append([epsilon, worst, stddev, diverging(ecz_both_errors_trials, epsilon)])
        return ['eps', 'expected_trials_worst_case', 'stddev_worst_case', 'expected_trials_both_errors'], rows

    def curve(self) -> Tuple[List[str], Rows]:
        """Expected trials against the bare success probability."""
        c0_values = self.scenario.get_floats('budget', 'c0', [15.0, 5.0])
        lengths = self.scenario.get_floats('budget', 'x', [0.0])
        trials = self.options['trials']
        if trials is not None:
            return (['C0', 'x_over_xtl', 'trials', 'p_success'],
                    [[c0, x, trials, psuccess_for_trials(c0, x, trials)] for c0 in c0_values for x in lengths])
        axis = self.scenario.get_range('ecz', 'psucc', np.linspace(0.01, 1.0, 100))
        rows = []
        for c0 in c0_values:
            for x in lengths:
                curve = en_vs_psuccess_curve(c0, x, axis)
                rows.extend([c0, x, shape_error, expected] for shape_error, expected in curve)
        return ['C0', 'x_over_xtl', 'one_minus_p_success', 'expected_trials'], rows

    def channel(self) -> Tuple[List[str], Rows]:
        """Step probabilities of a trial with the [ecz] amplitudes."""
        fields = {name: self.scenario.get_complex('ecz', name, REQUIRED if name in ('alpha', 'beta') else None)
                  for name in CHANNEL_FIELDS}
        ch = EczChannel(**{name: value for name, value in fields.items() if value is not None})
        steps = ecz_step_probabilities(ch)
        systematic = all(fields[name + '_t'] is None for name in CHANNEL_FIELDS[:4])
        header = list(steps.FIELDS) + ['expected_trials', 'fidelity']
        row = [getattr(steps, name) for name in steps.FIELDS]
        row += [diverging(ecz_expected_trials, ch, systematic),
                ecz_general_fidelity(ch.alpha, ch.alpha_t, ch.beta, ch.beta_t)]
        return header, [row]
