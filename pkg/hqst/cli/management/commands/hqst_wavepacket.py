"""Sample a wave packet or pulse of a scenario."""
from argparse import ArgumentParser
from typing import List, Tuple

from hqst.cli.commands import Rows, ScenarioCommand
from hqst.cli.scenario import Reference
from hqst.core import ComplexSignal
from hqst.wavepacket import evaluation_grid, ideal_phi, synthesize_psi

SIGNALS = ('alpha1', 'pulse', 'beta1', 'phi', 'psi')


class Command(ScenarioCommand):
    """Sample a wave packet or pulse of a scenario."""

    help = 'Sample the atomic amplitude, the pulse or the cavity amplitude of node 1, or the packets Phi and Psi.'
    name = 'wavepacket'

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--which', choices=SIGNALS, default='beta1', help='The signal to sample.')

    def compute(self) -> Tuple[List[str], Rows]:
        which = self.options['which']
        reference = self.reference()
        signal = self.signal(which, reference)
        header = ['t', '{}_re'.format(which), '{}_im'.format(which)]
        return header, zip(signal.times, signal.values.real, signal.values.imag)

    def signal(self, which: str, reference: Reference) -> ComplexSignal:
        """Return the sampled signal."""
        if which in ('alpha1', 'pulse', 'beta1'):
            return getattr(reference.emission, which)
        u = self.scenario.unitary(reference.ideal)
        grid = evaluation_grid(reference.beta1, reference.link, u, phi=reference.nominal)
        if which == 'phi':
            return ideal_phi(reference.beta1, reference.link, reference.nominal, grid)
        return synthesize_psi(reference.beta1, reference.link, u, grid)
