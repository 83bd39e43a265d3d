from pathlib import Path
from decouple import config

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

# Commands never serve requests; the key only satisfies Django's startup checks
SECRET_KEY = config('DJANGO_SECRET_KEY', default='wigner-billiards-offline')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    # Local apps
    'runs.apps.RunsConfig',
]

# No persistence: runs write files only
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# ========================================
# Numerics
# ========================================

# Gauss-Legendre nodes per axis for eigenbasis projections
WIGNER_QUADRATURE_ORDER = config('WIGNER_QUADRATURE_ORDER', default=200, cast=int)

# Oracle refinement: doubling must change W by less than this
WIGNER_ORACLE_TOLERANCE = config('WIGNER_ORACLE_TOLERANCE', default=1e-8, cast=float)
WIGNER_MAX_QUADRATURE_NODES = config('WIGNER_MAX_QUADRATURE_NODES', default=4096, cast=int)

# ========================================
# Output
# ========================================

WIGNER_OUTPUT_DIR = config('WIGNER_OUTPUT_DIR', default=str(BASE_DIR / 'output'))
WIGNER_FLOAT_FORMAT = config('WIGNER_FLOAT_FORMAT', default='%.17g')

# Logging
WIGNER_LOG_LEVEL = config('WIGNER_LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        name: {
            'handlers': ['console'],
            'level': WIGNER_LOG_LEVEL,
            'propagate': False,
        }
        for name in ('geometry', 'spectral', 'wigner', 'current', 'runs')
    },
}
