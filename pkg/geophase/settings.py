"""
Django settings for geophase project.
Generated by 'django-admin startproject' using Django 5.2.3.
For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/
For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
# The toolkit runs locally; the fallback key only signs admin sessions.
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-geophase-local-only')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = os.getenv('ALLOWED_HOSTS', 'localhost,127.0.0.1').split(',')

# Application definition
INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',

    # Third-party apps
    'rest_framework',

    # Local apps
    'model_core',
    'ci_analysis',
    'phase_tracing',
    'gauge_fields',
    'flux_quadrature',
    'adiabatic_dynamics',
    'effective_hamiltonian',
    'cli_runner',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'geophase.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'geophase.wsgi.application'

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.getenv('GEOPHASE_DB_PATH', str(BASE_DIR / 'db.sqlite3')),
    }
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

STATIC_URL = 'static/'
STATIC_ROOT = BASE_DIR / 'staticfiles'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# ──────────────  REST FRAMEWORK  ──────────────
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': (
        'rest_framework.renderers.JSONRenderer',
    ),
    'DEFAULT_PARSER_CLASSES': (
        'rest_framework.parsers.JSONParser',
    ),
}

# ──────────────  LOGGING  ──────────────
GEOPHASE_LOG_LEVEL = os.getenv('GEOPHASE_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': GEOPHASE_LOG_LEVEL, 'propagate': False}
        for app in (
            'model_core', 'ci_analysis', 'phase_tracing', 'gauge_fields',
            'flux_quadrature', 'adiabatic_dynamics', 'effective_hamiltonian',
            'cli_runner',
        )
    },
}

# ──────────────  NUMERICS  ──────────────
GEOPHASE_LOOP_SAMPLES = int(os.getenv('GEOPHASE_LOOP_SAMPLES', 2048))
GEOPHASE_LOOP_SAMPLES_CAP = int(os.getenv('GEOPHASE_LOOP_SAMPLES_CAP', 2 ** 20))
GEOPHASE_B_SEQUENCE = [
    float(b) for b in os.getenv(
        'GEOPHASE_B_SEQUENCE', '1e-1,2.5e-2,6.25e-3,1.5625e-3,3.90625e-4'
    ).split(',')
]
GEOPHASE_FLUX_TOLERANCE = float(os.getenv('GEOPHASE_FLUX_TOLERANCE', 1e-3))
GEOPHASE_QUAD_TOLERANCE = float(os.getenv('GEOPHASE_QUAD_TOLERANCE', 1e-10))
GEOPHASE_ODE_TOLERANCE = float(os.getenv('GEOPHASE_ODE_TOLERANCE', 1e-10))
GEOPHASE_CI_GRID = int(os.getenv('GEOPHASE_CI_GRID', 64))
GEOPHASE_CI_SEARCH_RADIUS = float(os.getenv('GEOPHASE_CI_SEARCH_RADIUS', 25.0))

# ──────────────  OUTPUT / RUNS  ──────────────
GEOPHASE_FLOAT_FORMAT = os.getenv('GEOPHASE_FLOAT_FORMAT', '%.12e')
GEOPHASE_RECORD_RUNS = os.getenv('GEOPHASE_RECORD_RUNS', 'False').lower() == 'true'
