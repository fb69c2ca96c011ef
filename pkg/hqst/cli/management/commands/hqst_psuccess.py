"""Success probability of the unitary of a scenario."""
from argparse import ArgumentParser
from typing import List, Tuple

from hqst.analysis import point_probability
from hqst.cli.commands import Rows, ScenarioCommand
from hqst.cli.settings import solver_options
from hqst.constants import ErrorVariable
from hqst.dynamics import simulate_transfer
from hqst.transform import errors_from_unitary


class Command(ScenarioCommand):
    """Success probability of the unitary of a scenario."""

    help = 'Compute the success probability of the scenario unitary by the overlap and, optionally, by the ODE.'
    name = 'psuccess'

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--ode', action='store_true', help='Integrate the amplitude equations as well.')

    def compute(self) -> Tuple[List[str], Rows]:
        reference = self.reference()
        u = self.scenario.unitary(reference.ideal)
        errors = errors_from_unitary(reference.ideal, u, reference.link.gamma2)
        probability = point_probability(reference.beta1, reference.link, reference.ideal, u.t_l, errors,
                                        self.scenario.get_float('grid', 'overlap_dt', None))
        header = ['x', 'y', 'z', *u.FIELDS, 'T_i_star', 'p_success']
        row = [errors[ErrorVariable.OMEGA0], errors[ErrorVariable.XI], errors[ErrorVariable.T],
               *u.get_data_as_dict().values(), reference.ideal.T_i_star, probability]
        if self.options['ode']:
            transferred = simulate_transfer(reference.emission, reference.link, u, reference.nominal,
                                            solver_options()).transferred
            header += ['p_ode', 'discrepancy']
            row += [transferred, abs(transferred - probability)]
        return header, [row]
