"""Emission under spontaneous decay of the atom."""
from argparse import ArgumentParser
from typing import List, Tuple

from hqst.cli.commands import Rows, ScenarioCommand
from hqst.cli.settings import solver_options
from hqst.constants import DecayKind
from hqst.dynamics import DecayModel, EmissionMetrics, decay_metrics
from hqst.wavepacket import LinkParams

DEFAULT_GAMMA1 = 2.0
MODELS = [kind.value for kind in DecayKind if kind != DecayKind.NONE]


def parse_positive(value: str) -> List[float]:
    """Parse comma-separated positive reals."""
    values = [float(item) for item in value.split(',')]
    if any(item <= 0 for item in values):
        raise ValueError('Expected positive values, not {!r}.'.format(value))
    return values


class Command(ScenarioCommand):
    """Emission under spontaneous decay of the atom."""

    help = 'Emit the logistic photon under a decay model and report the efficiency and the shape overlap.'
    name = 'decay'

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--model', choices=MODELS, help='The decay model, large-detuning by default.')
        parser.add_argument('--c1', help='Emitter cooperativities, comma-separated.')
        parser.add_argument('--r', help='Ratios gamma1 / 2k, comma-separated.')

    def model(self, kind: DecayKind, c1: float) -> DecayModel:
        """Return the decay model."""
        if kind == DecayKind.FINITE_DETUNING:
            return DecayModel.finite_detuning(c1, self.scenario.get_float('decay', 'gamma_r', None))
        return DecayModel(kind=kind, C1=c1)

    def compute(self) -> Tuple[List[str], Rows]:
        kind = self.option('model', 'decay', 'model', DecayKind, DecayKind.LARGE_DETUNING)
        ratios = self.option('r', 'decay', 'r', parse_positive, [5.0])
        cooperativities = self.option('c1', 'decay', 'c1', parse_positive, [5.0])
        gamma1 = self.scenario.get_float('link', 'gamma1', DEFAULT_GAMMA1)
        solver = solver_options()
        rows = []
        for r in ratios:
            link = LinkParams(gamma1=gamma1, gamma2=1.0, k=gamma1 / (2 * r))
            for c1 in cooperativities:
                model = self.model(kind, c1)
                metrics = decay_metrics(link, model, solver)
                rows.append([kind.value, c1, r, model.Gamma_r, *metrics.get_data_as_dict().values(),
                             metrics.effective_cooperativity])
        return ['model', 'C1', 'r', 'Gamma_r', *EmissionMetrics.FIELDS, 'C_eff'], rows
