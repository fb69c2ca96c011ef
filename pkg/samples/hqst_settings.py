"""
Settings for running the hqst commands.

Use with ``DJANGO_SETTINGS_MODULE=hqst_settings django-admin hqst_sweep --scenario ...``.
"""

SECRET_KEY = 'secret'

INSTALLED_APPS = [
    'hqst.cli.apps.CliConfig',
]

# hqst
HQST_SOLVER = {
    'METHOD': 'DOP853',
    'RTOL': 1e-9,
    'ATOL': 1e-12,
}
# Worker processes of sweeps, all available cores if unset. The environment variable HQST_JOBS takes precedence.
# HQST_JOBS = 4
HQST_BETA1_METHOD = 'QUADRATURE'
HQST_OUTPUT_DIR = '.'

LOGGING = {
    'version': 1,
    'formatters': {
        'verbose': {'format': '%(asctime)s %(levelname)-8s %(name)s:%(funcName)s:%(lineno)s %(message)s'},
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        '': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'hqst': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}
