"""Loss budget of a link of two nodes."""
from argparse import ArgumentParser
from typing import List, Tuple

from hqst.budget import (record, survival_probabilities, thermal_occupation, tilde_p_success,
                         wavelength_to_angular_frequency)
from hqst.cli.commands import Rows, ScenarioCommand
from hqst.errors import ParseError


def parse_reals(value: str) -> List[float]:
    """Parse comma-separated reals."""
    return [float(item) for item in value.split(',')]


class Command(ScenarioCommand):
    """Loss budget of a link of two nodes."""

    help = 'Compute the survival probabilities of emission, absorption and the line, and the degraded success.'
    name = 'budget'

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--c0', help='Cooperativities C_em = C_cav of both nodes, comma-separated.')
        parser.add_argument('--x', help='Line lengths in attenuation distances, comma-separated; 0 by default.')
        parser.add_argument('--thermal', action='store_true',
                            help='Thermal occupation of the [budget] wavelengths at the [budget] temperature.')

    def compute(self) -> Tuple[List[str], Rows]:
        if self.options['thermal']:
            temperature = self.scenario.get_float('budget', 'temperature', 293.0)
            wavelengths = self.scenario.get_floats('budget', 'wavelength')
            return (['wavelength', 'temperature', 'occupation'],
                    [[wavelength, temperature, thermal_occupation(wavelength_to_angular_frequency(wavelength),
                                                                  temperature)] for wavelength in wavelengths])

        lengths = self.option('x', 'budget', 'x', parse_reals, [0.0])
        p = self.scenario.get_float('budget', 'p', 1.0)
        c0 = self.option('c0', 'budget', 'c0', parse_reals, None)
        if c0 is not None:
            nodes = [(record('C0', value, value), record('C0', value, value)) for value in c0]
        elif self.scenario.has('budget', 'c_em1'):
            nodes = [tuple(record('node{}'.format(index), self.scenario.get_float('budget', 'c_em{}'.format(index)),
                                  self.scenario.get_float('budget', 'c_cav{}'.format(index)))
                           for index in (1, 2))]
        else:
            raise ParseError('The budget requires --c0 or the [budget] fields c_em1, c_cav1, c_em2 and c_cav2.')

        header = ['C_em1', 'C_cav1', 'C_em2', 'C_cav2', 'x_over_xtl', 'P_em1', 'P_cav1', 'P_em2', 'P_cav2', 'P_line',
                  'p', 'tilde_p_success']
        rows = []
        for node1, node2 in nodes:
            for x_over_xtl in lengths:
                p_em1, p_cav1, p_line = survival_probabilities(node1, x_over_xtl)
                p_em2, p_cav2, _ = survival_probabilities(node2)
                rows.append([node1.C_em, node1.C_cav, node2.C_em, node2.C_cav, x_over_xtl, p_em1, p_cav1, p_em2,
                             p_cav2, p_line, p, tilde_p_success(p, node1, node2, x_over_xtl)])
        return header, rows
