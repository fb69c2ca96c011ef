"""Pytest wiring: configure Django the same way tox does (DJANGO_SETTINGS_MODULE)."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hqst.tests.settings')
django.setup()
