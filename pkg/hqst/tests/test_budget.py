import math
import os
from tempfile import TemporaryDirectory

import numpy as np
from django.test import SimpleTestCase

from hqst.budget import (CooperativityRecord, EczChannel, cavity_cooperativity, cooperativity_from_probability,
                         cooperativity_from_raw, ecz_both_errors_trials, ecz_expected_trials, ecz_general_fidelity,
                         ecz_nonsystematic_fidelity, ecz_step_probabilities, ecz_systematic_success,
                         ecz_trials_stddev, ecz_worst_case_trials, en_vs_psuccess_curve, load_cooperativity_table,
                         psuccess_for_trials, record, survival, survival_probabilities, table_averages,
                         thermal_occupation, tilde_p_success, total_survival, wavelength_to_angular_frequency,
                         worst_case_epsilon)
from hqst.cli.settings import DEFAULT_COOPERATIVITY_TABLE
from hqst.constants import EmitterType, RecordFlag
from hqst.errors import DivergenceError, ParseError, ValidationError

HEADER = 'label,emitter_type,g,gamma,gamma_sd,C_em,T_i,T_o,L,T_loss,kappa_c,kappa_l,P_cav_reported,flags,abridged\n'

# Survival probabilities in percent, in the dataset order; None without a cavity.
P_EM = [73.5, 85.7, 98.5, 74.6, 88.5, 87.3, 82.1, 45.5, 4.6, 23.6, 44.7, 65.7, 76.2]
P_CAV = [90.0, 92.2, 56.9, 88.9, 92.0, 85.7, None, 99.0, 32.3, 87.0, 20.0, 78.0, 20.0]
P_TOT = [43.8, 62.5, 31.4, 44.0, 66.3, 56.0, None, 20.3, 0.02, 4.2, 0.8, 26.3, 2.3]


class TestCooperativity(SimpleTestCase):
    def test_survival(self):
        self.assertEqual(survival(1.0), 0.5)
        self.assertAlmostEqual(survival(9.0), 0.9)

    def test_from_raw(self):
        self.assertAlmostEqual(cooperativity_from_raw(5.0, 6.0, 6.0), 25 / 9)

    def test_cavity(self):
        self.assertAlmostEqual(cavity_cooperativity(100.0, 6.0, 4.0), 10.0)

    def test_from_probability(self):
        self.assertAlmostEqual(cooperativity_from_probability(0.9), 9.0)
        self.assertAlmostEqual(survival(cooperativity_from_probability(0.2)), 0.2)
        self.assertRaises(ValidationError, cooperativity_from_probability, 1.0)
        self.assertRaises(ValidationError, cooperativity_from_probability, 0.0)


class TestCooperativityRecord(SimpleTestCase):
    def test_minimal(self):
        rec = record('node', 5.0, 10.0)
        self.assertEqual(rec.label, 'node')
        self.assertIsNone(rec.emitter_type)
        self.assertEqual(rec.flags, frozenset())
        self.assertTrue(rec.has_cavity)
        self.assertEqual(rec.require_cavity(), 10.0)

    def test_without_cavity(self):
        rec = record('node', 5.0, None)
        self.assertFalse(rec.has_cavity)
        self.assertRaises(ValidationError, rec.require_cavity)

    def test_conversions(self):
        rec = CooperativityRecord(label='node', emitter_type='ion', C_em=1.0, flags=['lower_bound'])
        self.assertEqual(rec.emitter_type, EmitterType.ION)
        self.assertEqual(rec.flags, frozenset({RecordFlag.LOWER_BOUND}))

    def test_invalid_cooperativity(self):
        self.assertRaises(ValidationError, record, 'node', 0.0, 1.0)
        self.assertRaises(ValidationError, record, 'node', 1.0, -1.0)

    def test_raw_inputs_disagree(self):
        with self.assertRaises(ValidationError) as cm:
            CooperativityRecord(label='node', C_em=3.0, g=5.0, gamma=6.0, gamma_sd=6.0)
        self.assertIn('C_em', cm.exception.errors)

    def test_raw_inputs_agree(self):
        rec = CooperativityRecord(label='node', C_em=2.78, g=5.0, gamma=6.0, gamma_sd=6.0)
        self.assertEqual(rec.C_em, 2.78)

    def test_cavity_disagrees(self):
        self.assertRaises(ValidationError, CooperativityRecord, label='node', C_em=1.0, C_cav=5.0,
                          kappa_c=2.4, kappa_l=0.3)

    def test_loss_from_mirrors(self):
        rec = CooperativityRecord(label='node', C_em=1.0, C_cav=10.0, T_i=100.0, T_o=4.0, L=6.0)
        self.assertEqual(rec.T_loss, 10.0)

    def test_loss_from_mirrors_disagrees(self):
        self.assertRaises(ValidationError, CooperativityRecord, label='node', C_em=1.0, C_cav=5.0,
                          T_i=100.0, T_o=4.0, L=6.0)

    def test_reported_loss_kept(self):
        rec = CooperativityRecord(label='node', C_em=1.0, C_cav=9.0, T_i=90.0, T_o=4.0, L=6.0, T_loss=10.0)
        self.assertEqual(rec.T_loss, 10.0)

    def test_inferred_cavity_skips_check(self):
        rec = CooperativityRecord(label='node', C_em=1.0, C_cav=9.0, T_i=100.0, T_loss=11.1,
                                  P_cav_reported=0.9, flags=[RecordFlag.INFERRED])
        self.assertEqual(rec.C_cav, 9.0)


class TestSurvival(SimpleTestCase):
    def test_probabilities(self):
        p_em, p_cav, p_line = survival_probabilities(record('node', 1.0, 3.0), 1.0)
        self.assertEqual(p_em, 0.5)
        self.assertEqual(p_cav, 0.75)
        self.assertAlmostEqual(p_line, math.exp(-1))

    def test_negative_length(self):
        self.assertRaises(ValidationError, survival_probabilities, record('node', 1.0, 3.0), -0.1)

    def test_total(self):
        self.assertAlmostEqual(total_survival(record('node', 1.0, 3.0)), 0.375 ** 2)

    def test_tilde_p_success(self):
        node = record('node', 15.0, 15.0)
        self.assertAlmostEqual(tilde_p_success(1.0, node, node), (15 / 16) ** 4)
        self.assertAlmostEqual(tilde_p_success(0.5, node, node, 2.0), 0.5 * (15 / 16) ** 4 * math.exp(-2))

    def test_tilde_p_success_nodes_differ(self):
        first, second = record('first', 1.0, 3.0), record('second', 3.0, 1.0)
        self.assertAlmostEqual(tilde_p_success(1.0, first, second), 0.5 * 0.75 * 0.75 * 0.5)

    def test_tilde_p_success_invalid(self):
        node = record('node', 15.0, 15.0)
        self.assertRaises(ValidationError, tilde_p_success, 1.5, node, node)
        self.assertRaises(ValidationError, tilde_p_success, 1.0, node, record('bare', 15.0, None))


class TestThermalOccupation(SimpleTestCase):
    def test_optical(self):
        occupation = thermal_occupation(wavelength_to_angular_frequency(700e-9), 293.0)
        self.assertGreater(occupation, 1e-31)
        self.assertLess(occupation, 1e-30)

    def test_microwave(self):
        occupation = thermal_occupation(wavelength_to_angular_frequency(20e-3), 293.0)
        self.assertAlmostEqual(occupation, 407.0, delta=1.0)

    def test_cold(self):
        self.assertEqual(thermal_occupation(wavelength_to_angular_frequency(700e-9), 1e-3), 0.0)

    def test_angular_frequency(self):
        self.assertAlmostEqual(wavelength_to_angular_frequency(2 * math.pi * 299792458.0), 1.0)

    def test_invalid(self):
        self.assertRaises(ValidationError, thermal_occupation, 0.0, 293.0)
        self.assertRaises(ValidationError, thermal_occupation, 1e15, 0.0)


class TestCooperativityTable(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.records = load_cooperativity_table(DEFAULT_COOPERATIVITY_TABLE)

    def test_records(self):
        self.assertEqual(len(self.records), 13)
        self.assertEqual(self.records[0].label, 'Ritter 2012')
        self.assertEqual(self.records[0].emitter_type, EmitterType.NEUTRAL_ATOM)
        self.assertEqual(len([rec for rec in self.records if rec.abridged]), 11)

    def test_survival(self):
        for rec, p_em, p_cav, p_tot in zip(self.records, P_EM, P_CAV, P_TOT):
            with self.subTest(label=rec.label):
                self.assertAlmostEqual(100 * survival(rec.C_em), p_em, delta=0.15)
                if p_cav is None:
                    self.assertFalse(rec.has_cavity)
                    continue
                self.assertAlmostEqual(100 * survival(rec.C_cav), p_cav, delta=0.15)
                self.assertAlmostEqual(100 * total_survival(rec), p_tot, delta=max(0.15, 0.05 * p_tot))

    def test_inferred(self):
        inferred = [rec.label for rec in self.records if RecordFlag.INFERRED in rec.flags]
        self.assertEqual(inferred, ['Ritter 2012', 'Begley 2016', 'Krutyanskiy 2023 A', 'Krutyanskiy 2023 B'])
        self.assertAlmostEqual(self.records[0].C_cav, 9.0)

    def test_not_reported_losses(self):
        keller = self.records[7]
        self.assertEqual(keller.L, 0.0)
        self.assertAlmostEqual(keller.C_cav, 100.0)

    def test_averages(self):
        c_em, c_cav = table_averages(self.records)
        self.assertAlmostEqual(c_em, 9.0, delta=0.05)
        self.assertAlmostEqual(c_cav, 5.9, delta=0.05)

    def test_trimmed_averages(self):
        c_em, c_cav = table_averages(self.records, trimmed=True)
        self.assertAlmostEqual(c_em, 3.6, delta=0.05)
        self.assertAlmostEqual(c_cav, 5.8, delta=0.05)

    def test_averages_need_abridged_records(self):
        self.assertRaises(ValidationError, table_averages, [rec for rec in self.records if not rec.abridged])

    def test_trimming_needs_three_values(self):
        self.assertRaises(ValidationError, table_averages, self.records[:2], trimmed=True)


class TestLoadCooperativityTable(SimpleTestCase):
    def setUp(self):
        self.tmp_dir = TemporaryDirectory()
        self.path = os.path.join(self.tmp_dir.name, 'table.csv')

    def tearDown(self):
        self.tmp_dir.cleanup()

    def write(self, content: str) -> None:
        with open(self.path, 'w', encoding='utf-8') as handle:
            handle.write(content)

    def test_direct_cooperativity(self):
        self.write(HEADER + 'node,ion,,,,2.5,,,,,,,,,no\n')
        rec, = load_cooperativity_table(self.path)
        self.assertEqual(rec.C_em, 2.5)
        self.assertIsNone(rec.C_cav)
        self.assertFalse(rec.abridged)

    def test_missing_cooperativity(self):
        self.write(HEADER + 'first,ion,,,,2.5,,,,,,,,,yes\nsecond,ion,,,,,,,,,,,,,yes\n')
        with self.assertRaisesRegex(ParseError, r'table\.csv:3: Either C_em'):
            load_cooperativity_table(self.path)

    def test_inferred_without_probability(self):
        self.write(HEADER + 'node,ion,,,,2.5,,,,,,,,inferred,yes\n')
        self.assertRaisesRegex(ParseError, 'P_cav_reported', load_cooperativity_table, self.path)

    def test_unknown_flag(self):
        self.write(HEADER + 'node,ion,,,,2.5,,,,,,,,estimated,yes\n')
        self.assertRaisesRegex(ParseError, 'table.csv:2', load_cooperativity_table, self.path)

    def test_unknown_emitter(self):
        self.write(HEADER + 'node,quantum-dot,,,,2.5,,,,,,,,,yes\n')
        self.assertRaises(ParseError, load_cooperativity_table, self.path)

    def test_missing_label(self):
        self.write('name,C_em\nnode,2.5\n')
        self.assertRaisesRegex(ParseError, 'label column', load_cooperativity_table, self.path)

    def test_not_a_number(self):
        self.write(HEADER + 'node,ion,,,,many,,,,,,,,,yes\n')
        self.assertRaises(ParseError, load_cooperativity_table, self.path)


class TestEczChannel(SimpleTestCase):
    def test_systematic_defaults(self):
        channel = EczChannel(alpha=0.9, beta=0.8, upsilon1=0.6)
        self.assertEqual(channel.alpha_t, 0.9)
        self.assertEqual(channel.beta_t, 0.8)
        self.assertEqual(channel.upsilon1_t, 0.6)
        self.assertEqual(channel.upsilon2_t, 0j)

    def test_not_normalized(self):
        self.assertRaises(ValidationError, EczChannel, alpha=1.0, beta=0.5)
        self.assertRaises(ValidationError, EczChannel, alpha=1.0, beta=1.0, beta_t=0.5)

    def test_alpha_too_large(self):
        self.assertRaises(ValidationError, EczChannel, alpha=1.1, beta=1.0)

    def test_not_a_number(self):
        self.assertRaises(ValidationError, EczChannel, alpha='1', beta=1.0)

    def test_complex(self):
        channel = EczChannel(alpha=0.6j, beta=0.8 * np.exp(0.3j), upsilon1=0.6)
        self.assertAlmostEqual(abs(channel.beta), 0.8)

    def test_worst_case(self):
        channel = EczChannel.worst_case(0.36)
        self.assertEqual(channel.alpha, 1.0)
        self.assertAlmostEqual(channel.beta, 0.8)
        self.assertAlmostEqual(channel.upsilon1, 0.6)

    def test_both_errors(self):
        channel = EczChannel.both_errors(0.5, 0.5)
        self.assertAlmostEqual(abs(channel.alpha) ** 2, 0.5)
        self.assertAlmostEqual(abs(channel.upsilon1) ** 2, 0.25)
        self.assertAlmostEqual(abs(channel.upsilon2) ** 2, 0.25)

    def test_invalid_epsilon(self):
        self.assertRaises(ValidationError, EczChannel.worst_case, 1.5)
        self.assertRaises(ValidationError, EczChannel.both_errors, -0.1)


class TestEczTrials(SimpleTestCase):
    def test_perfect(self):
        self.assertEqual(ecz_worst_case_trials(0.0), 1.0)
        self.assertEqual(ecz_both_errors_trials(0.0), 1.0)
        self.assertAlmostEqual(ecz_expected_trials(EczChannel(alpha=1.0, beta=1.0)), 1.0)

    def test_worst_case_closed_form(self):
        for epsilon in (0.1, 0.5, 0.9):
            with self.subTest(epsilon=epsilon):
                channel = EczChannel.worst_case(epsilon)
                self.assertAlmostEqual(ecz_expected_trials(channel), ecz_worst_case_trials(epsilon))
                self.assertAlmostEqual(ecz_expected_trials(channel, systematic=False), ecz_worst_case_trials(epsilon))

    def test_both_errors_closed_form(self):
        for epsilon in (0.1, 0.5, 0.9):
            with self.subTest(epsilon=epsilon):
                channel = EczChannel.both_errors(epsilon)
                self.assertAlmostEqual(ecz_expected_trials(channel), ecz_both_errors_trials(epsilon))
                self.assertAlmostEqual(ecz_expected_trials(channel, systematic=False), ecz_both_errors_trials(epsilon))

    def test_steps(self):
        steps = ecz_step_probabilities(EczChannel.worst_case(0.5))
        self.assertAlmostEqual(steps.p_jump, 0.25)
        self.assertAlmostEqual(steps.p_ii, 0.0)
        self.assertAlmostEqual(steps.p_jump_t, 0.25)
        self.assertAlmostEqual(steps.p_iv, 0.5)
        self.assertAlmostEqual(steps.p_s, 0.28125)

    def test_steps_with_excited_error(self):
        channel = EczChannel.both_errors(0.5, 0.5)
        steps = ecz_step_probabilities(channel)
        self.assertAlmostEqual(steps.p_jump, 0.375)
        self.assertAlmostEqual(steps.p_ii, 1 / 6)
        self.assertAlmostEqual(steps.p_jump_t, 0.4)
        self.assertAlmostEqual(steps.p_iv, 3 / 7)
        self.assertAlmostEqual(steps.p_s, ecz_systematic_success(channel))

    def test_steps_lost_photon(self):
        steps = ecz_step_probabilities(EczChannel(alpha=0.0, beta=0.0, upsilon2=1.0))
        self.assertEqual(steps.p_s, 0.0)

    def test_nonsystematic(self):
        channel = EczChannel(alpha=1.0, beta=1.0, beta_t=math.sqrt(0.5), upsilon1_t=math.sqrt(0.5))
        self.assertGreater(ecz_expected_trials(channel, systematic=False), 1.0)
        self.assertEqual(ecz_expected_trials(channel), 1.0)

    def test_divergence(self):
        self.assertRaises(DivergenceError, ecz_worst_case_trials, 1.0)
        self.assertRaises(DivergenceError, ecz_both_errors_trials, 1.0)
        self.assertRaises(DivergenceError, ecz_expected_trials, EczChannel.worst_case(1.0))

    def test_stddev(self):
        self.assertEqual(ecz_trials_stddev(1.0), 0.0)
        self.assertAlmostEqual(ecz_trials_stddev(0.5), math.sqrt(2))
        self.assertRaises(DivergenceError, ecz_trials_stddev, 0.0)

    def test_worst_case_epsilon(self):
        epsilon = worst_case_epsilon(10.0)
        self.assertAlmostEqual(epsilon, 0.746, delta=0.002)
        self.assertAlmostEqual(ecz_worst_case_trials(epsilon), 10.0, places=6)
        self.assertEqual(worst_case_epsilon(1.0), 0.0)
        self.assertRaises(ValidationError, worst_case_epsilon, 0.5)


class TestEczBudget(SimpleTestCase):
    def test_psuccess_for_trials(self):
        self.assertAlmostEqual(psuccess_for_trials(15.0, 0.0, 10.0), 0.329, delta=0.003)
        self.assertAlmostEqual(psuccess_for_trials(5.0, 0.0, 10.0), 0.527, delta=0.003)

    def test_psuccess_for_trials_consistent(self):
        p = psuccess_for_trials(15.0, 0.5, 10.0)
        node = record('C0', 15.0, 15.0)
        self.assertAlmostEqual(tilde_p_success(p, node, node, 0.5), 1 - worst_case_epsilon(10.0))

    def test_unreachable(self):
        self.assertRaises(ValidationError, psuccess_for_trials, 0.5, 0.0, 2.0)

    def test_curve(self):
        curve = en_vs_psuccess_curve(15.0, 0.0, np.linspace(0.01, 1.0, 100))
        self.assertEqual(curve.shape, (100, 2))
        self.assertAlmostEqual(curve[-1, 0], 0.0)
        self.assertAlmostEqual(curve[-1, 1], ecz_worst_case_trials(1 - (15 / 16) ** 4))
        self.assertTrue(np.all(np.diff(curve[:, 1]) < 0))

    def test_curve_without_photons(self):
        curve = en_vs_psuccess_curve(15.0, 0.0, [0.0])
        self.assertEqual(curve[0, 1], math.inf)

    def test_curve_invalid(self):
        self.assertRaises(ValidationError, en_vs_psuccess_curve, 0.0, 0.0, [0.5])


class TestEczFidelity(SimpleTestCase):
    def test_systematic(self):
        self.assertAlmostEqual(ecz_general_fidelity(0.8, 0.8, 0.6j, 0.6j), 1.0)

    def test_general(self):
        self.assertAlmostEqual(ecz_general_fidelity(1.0, 1.0, 1.0, -1.0), 0.0)

    def test_vanishing(self):
        self.assertRaises(ValidationError, ecz_general_fidelity, 0.0, 0.0, 1.0, 1.0)

    def test_nonsystematic(self):
        self.assertAlmostEqual(ecz_nonsystematic_fidelity(1.0, 1.0, 0.0), 1.0)
        self.assertAlmostEqual(ecz_nonsystematic_fidelity(1.0, 1.0, math.pi), 0.0)
        self.assertAlmostEqual(ecz_nonsystematic_fidelity(2.0, 1.0, 0.0), 0.9)
        self.assertRaises(ValidationError, ecz_nonsystematic_fidelity, 0.0, 1.0, 0.0)
