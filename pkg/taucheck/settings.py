"""
Django settings for the taucheck project.

Only the pieces a batch tool needs are configured: the ``tau`` app, logging
and the built-in defaults of every management command. There is no database
and no web layer.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""
import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Nothing is signed or served; Django still expects a key to be present.
SECRET_KEY = 'taucheck-batch-tool-not-used-for-signing'

DEBUG = False

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'tau',
]

DATABASES = {}

# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DATA_DIR = os.path.join(BASE_DIR, 'data')
if not os.path.exists(DATA_DIR):
    os.makedirs(DATA_DIR)

# Logging

TAU_LOG_LEVEL = os.environ.get('TAU_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'tau': {
            'handlers': ['console'],
            'level': TAU_LOG_LEVEL,
            'propagate': False,
        },
    },
}

# Built-in defaults of the management commands, shared ones first and then
# per command. A ``--config`` TOML file overrides these in the same layout
# (a [defaults] table and one table per command); explicit flags override both.

TAU_DEFAULTS = {
    'epsilon': '1',
    'log_power_exponent': 10,
    'murty_saradha_c': '10',
    'matveev_c0': '6.8e10',
    'q_bound': 8 * 10 ** 25,
    'case_split_decades': 600,
    'p_max': 2000,
    'exponent_primes': [3, 5, 7],
    'workers': 1,
    'format': 'json',
    'full_value_digits': 10_000,
}

TAU_COMMAND_DEFAULTS = {
    'coeff': {'weight': 12},
    'scan': {'format': 'json'},
    'matveev': {'d': 2, 'k_field': 2, 'B': 2},
    'cf': {'count': 20, 'precision_bits': 512},
}

# The 250k-digit worked example is only part of the suite when asked for.
TAU_SLOW_TESTS = os.environ.get('TAU_SLOW_TESTS', '') == '1'
