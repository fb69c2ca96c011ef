"""Django settings for unitests."""
from typing import Any, Dict, List

from hqst.tests.warnings import setup_warnings_filter

setup_warnings_filter()


SECRET_KEY = 'SECRET'

INSTALLED_APPS: List[str] = [
    'hqst.cli.apps.CliConfig',
]

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# hqst
HQST_SOLVER: Dict[str, Any] = {
    'METHOD': 'DOP853',
    'RTOL': 1e-9,
    'ATOL': 1e-12,
}
HQST_JOBS = 1
