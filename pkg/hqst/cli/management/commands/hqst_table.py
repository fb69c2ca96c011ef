"""Cooperativity dataset with derived survival probabilities."""
from argparse import ArgumentParser
from typing import List, Tuple

from hqst.budget import load_cooperativity_table, survival, table_averages, total_survival
from hqst.cli.commands import Rows, ScenarioCommand
from hqst.cli.settings import HQST_SETTINGS


class Command(ScenarioCommand):
    """Cooperativity dataset with derived survival probabilities."""

    help = 'Render the cooperativity dataset with the survival probabilities derived from it and the averages.'
    name = 'table'

    def add_command_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('--abridged', action='store_true', help='Only the rows of the abridged table.')

    def compute(self) -> Tuple[List[str], Rows]:
        records = load_cooperativity_table(HQST_SETTINGS.cooperativity_table)
        if self.options['abridged']:
            records = [rec for rec in records if rec.abridged]
        header = ['label', 'emitter_type', 'C_em', 'P_em', 'C_cav', 'P_cav', 'P_tot', 'flags']
        rows = []
        for rec in records:
            p_cav = survival(rec.C_cav) if rec.has_cavity else None
            p_tot = total_survival(rec) if rec.has_cavity else None
            rows.append([rec.label, rec.emitter_type.value if rec.emitter_type else None, rec.C_em,
                         survival(rec.C_em), rec.C_cav, p_cav, p_tot,
                         ';'.join(sorted(flag.value for flag in rec.flags))])
        for label, trimmed in (('average', False), ('average trimmed', True)):
            c_em, c_cav = table_averages(records, trimmed)
            rows.append([label, None, c_em, None, c_cav, None, None, None])
        return header, rows
