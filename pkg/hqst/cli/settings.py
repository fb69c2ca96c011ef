"""Settings of hqst.cli."""
import os
from typing import Optional

from appsettings import AppSettings, NestedDictSetting, PositiveFloatSetting, PositiveIntegerSetting, StringSetting
from django.core.exceptions import ImproperlyConfigured

from hqst.constants import SOLVER_ATOL, SOLVER_METHOD, SOLVER_RTOL, Beta1Method
from hqst.dynamics import SolverOptions
from hqst.settings import EnumSetting

DEFAULT_COOPERATIVITY_TABLE = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data', 'cooperativity.csv')
SOLVER_METHODS = ('RK45', 'RK23', 'DOP853', 'Radau', 'BDF', 'LSODA')
"""Methods of scipy's solve_ivp."""


class HqstSettings(AppSettings):
    """hqst command-line settings."""

    solver = NestedDictSetting(settings=dict(
        method=StringSetting(default=SOLVER_METHOD, min_length=1),
        rtol=PositiveFloatSetting(default=SOLVER_RTOL),
        atol=PositiveFloatSetting(default=SOLVER_ATOL),
    ), default={})
    jobs = PositiveIntegerSetting(default=None)
    beta1_method = EnumSetting(Beta1Method, default=Beta1Method.QUADRATURE.value)
    cooperativity_table = StringSetting(default=DEFAULT_COOPERATIVITY_TABLE, min_length=1)
    output_dir = StringSetting(default='.', min_length=1)

    class Meta:
        """Metadata."""

        setting_prefix = 'hqst_'


HQST_SETTINGS = HqstSettings()


def check_settings():
    """Check settings."""
    HqstSettings.check()
    solver = HQST_SETTINGS.solver
    if solver.get('method', SOLVER_METHOD) not in SOLVER_METHODS:
        raise ImproperlyConfigured('HQST_SOLVER.METHOD must be one of {}.'.format(', '.join(SOLVER_METHODS)))
    if not os.path.isfile(HQST_SETTINGS.cooperativity_table):
        raise ImproperlyConfigured('HQST_COOPERATIVITY_TABLE {!r} is not a file.'.format(
            HQST_SETTINGS.cooperativity_table))


def solver_options() -> SolverOptions:
    """Return the configured options of the ODE solver."""
    solver = HQST_SETTINGS.solver
    return SolverOptions(method=solver.get('method', SOLVER_METHOD), rtol=solver.get('rtol', SOLVER_RTOL),
                         atol=solver.get('atol', SOLVER_ATOL))


def configured_jobs(option: Optional[int] = None) -> Optional[int]:
    """
    Return the number of worker processes: the environment variable ``HQST_JOBS``, the option, the setting.

    :raise ImproperlyConfigured: If ``HQST_JOBS`` is not a positive integer.
    """
    value = os.environ.get('HQST_JOBS')
    if value:
        try:
            jobs = int(value)
        except ValueError:
            jobs = 0
        if jobs < 1:
            raise ImproperlyConfigured('The environment variable HQST_JOBS must be a positive integer, '
                                       'not {!r}.'.format(value))
        return jobs
    return option if option is not None else HQST_SETTINGS.jobs
