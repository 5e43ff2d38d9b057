"""
Django settings for minorant_site project.

The project is driven from the command line (manage.py and cli.runner);
there is no web surface, so only the apps needed by the ORM, DRF
serializers and Celery are installed.
"""

import os
from pathlib import Path

import dj_database_url  # type: ignore[import-not-found]
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'minorant-local-key-not-used-for-signing')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS: list[str] = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    # Third-party apps
    'rest_framework',
    # Local apps
    'levy_models',
    'minorant_core',
    'stick_breaking',
    'path_transforms',
    'verify',
    'cli',
]


# Database
# https://docs.djangoproject.com/en/5.1/ref/settings/#databases

DATABASES = {
    'default': dj_database_url.config(
        default=f'sqlite:///{BASE_DIR / "db.sqlite3"}',
        conn_max_age=600
    )
}

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# REST Framework Configuration (serializers and JSON rendering only)
REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
    'COMPACT_JSON': True,
}


# Simulation settings
MINORANT_DEFAULT_SEED = int(os.getenv('LEVY_MINORANT_SEED', '42'))
MINORANT_BLOCK_SIZE = int(os.getenv('MINORANT_BLOCK_SIZE', '1000'))
MINORANT_JOBS = int(os.getenv('MINORANT_JOBS', '1'))
MINORANT_COLLINEAR_EPS = float(os.getenv('MINORANT_COLLINEAR_EPS', '1e-12'))
MINORANT_QUAD_EPSREL = float(os.getenv('MINORANT_QUAD_EPSREL', '1e-6'))
# Paths with at least this many points are pruned before the hull scan
MINORANT_PRUNE_THRESHOLD = int(os.getenv('MINORANT_PRUNE_THRESHOLD', '256'))
MINORANT_DEFAULT_STICKS = int(os.getenv('MINORANT_DEFAULT_STICKS', '64'))


# Logging: artifacts go to stdout, diagnostics to stderr
MINORANT_LOG_LEVEL = os.getenv('MINORANT_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': MINORANT_LOG_LEVEL,
            'propagate': False,
        }
        for app in (
            'levy_models',
            'minorant_core',
            'stick_breaking',
            'path_transforms',
            'verify',
            'cli',
        )
    },
}


# Celery Configuration
CELERY_BROKER_URL = os.getenv('CELERY_BROKER_URL', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND = os.getenv(
    'CELERY_RESULT_BACKEND',
    'redis://localhost:6379/0',
)
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = os.getenv('CELERY_TIMEZONE', 'UTC')
CELERY_TASK_ALWAYS_EAGER = os.getenv('CELERY_TASK_ALWAYS_EAGER', 'False') == 'True'
