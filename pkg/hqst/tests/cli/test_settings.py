import os
from unittest.mock import patch

from django.core.exceptions import ImproperlyConfigured
from django.test import SimpleTestCase, override_settings

from hqst.cli.settings import HQST_SETTINGS, check_settings, configured_jobs, solver_options
from hqst.constants import Beta1Method
from hqst.dynamics import SolverOptions


class TestCheckSettings(SimpleTestCase):
    def test_check_settings(self):
        check_settings()

    def test_check_settings_solver_method(self):
        with override_settings(HQST_SOLVER={'METHOD': 'Euler'}):
            self.assertRaisesMessage(ImproperlyConfigured, 'HQST_SOLVER.METHOD', check_settings)

    def test_check_settings_solver_tolerance(self):
        with override_settings(HQST_SOLVER={'RTOL': -1.0}):
            self.assertRaises(ImproperlyConfigured, check_settings)

    def test_check_settings_beta1_method(self):
        with override_settings(HQST_BETA1_METHOD='series'):
            self.assertRaises(ImproperlyConfigured, check_settings)

    def test_check_settings_cooperativity_table(self):
        with override_settings(HQST_COOPERATIVITY_TABLE='/nonexistent/cooperativity.csv'):
            self.assertRaisesMessage(ImproperlyConfigured, 'is not a file', check_settings)

    def test_beta1_method(self):
        self.assertIs(HQST_SETTINGS.beta1_method, Beta1Method.QUADRATURE)
        with override_settings(HQST_BETA1_METHOD='LERCH'):
            self.assertIs(HQST_SETTINGS.beta1_method, Beta1Method.LERCH)


class TestSolverOptions(SimpleTestCase):
    def test_solver_options(self):
        self.assertEqual(solver_options(), SolverOptions(method='DOP853', rtol=1e-9, atol=1e-12))

    def test_solver_options_partial(self):
        with override_settings(HQST_SOLVER={'METHOD': 'Radau'}):
            self.assertEqual(solver_options(), SolverOptions(method='Radau'))


class TestConfiguredJobs(SimpleTestCase):
    def test_setting(self):
        with patch.dict(os.environ, clear=True):
            self.assertEqual(configured_jobs(), 1)
            with override_settings(HQST_JOBS=2):
                self.assertEqual(configured_jobs(), 2)

    def test_option(self):
        with patch.dict(os.environ, clear=True):
            self.assertEqual(configured_jobs(3), 3)

    def test_environment(self):
        with patch.dict(os.environ, {'HQST_JOBS': '4'}):
            self.assertEqual(configured_jobs(3), 4)

    def test_environment_invalid(self):
        for value in ('0', 'many'):
            with self.subTest(value=value):
                with patch.dict(os.environ, {'HQST_JOBS': value}):
                    self.assertRaisesMessage(ImproperlyConfigured, 'HQST_JOBS', configured_jobs)
