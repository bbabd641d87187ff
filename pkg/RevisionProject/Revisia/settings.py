"""
Réglages Django du projet Revisia.

Laboratoire de vérification pour la révision multiple de bases de croyances
dans des logiques finies. Le projet n'expose ni site web ni base de données :
toute la surface passe par les commandes de gestion (manage.py).

Référence des réglages :
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os, sys
from pathlib import Path
from dotenv import load_dotenv

# Construction des chemins dans le projet
BASE_DIR = Path(__file__).resolve().parent.parent          # .../RevisionProject/
ROOT_DIR = BASE_DIR.parent                                  # racine du dépôt

# Charger le .env à la racine du dépôt
load_dotenv(ROOT_DIR / ".env")

# Contexte tests/CI
IS_CI_OR_TEST = ("test" in sys.argv) or os.getenv("GITHUB_ACTIONS") == "true" or os.getenv("CI") == "true"

# Aucune donnée sensible n'est manipulée : une clé locale suffit hors configuration explicite
SECRET_KEY = os.getenv("SECRET_KEY") or "revisia-local-only"

DEBUG = os.getenv("DEBUG", "True" if IS_CI_OR_TEST else "False").lower() == "true"

ALLOWED_HOSTS = []


def _env_int(name, default):
    """Lit un entier depuis l'environnement, avec valeur par défaut"""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)


# Configuration du laboratoire - centralisée pour faciliter la maintenance
LAB_CONFIG = {
    # Audit (G4) : exhaustif si 2^|phrases| <= seuil et si le nombre de
    # couples de bases brutes reste sous RAW_SCAN_MAX_TUPLES, sinon échantillonné
    'G4_EXHAUSTIVE_MAX_BASES': _env_int("REVISIA_G4_EXHAUSTIVE_MAX_BASES", 4096),
    'RAW_SCAN_MAX_TUPLES': _env_int("REVISIA_RAW_SCAN_MAX_TUPLES", 65_536),
    'G4_SAMPLE_SIZE': _env_int("REVISIA_G4_SAMPLE_SIZE", 10_000),

    # Reproductibilité
    'DEFAULT_SEED': _env_int("REVISIA_SEED", 0),

    # Boucles critiques
    'LOOP_LIMIT': _env_int("REVISIA_LOOP_LIMIT", 10),

    # Plafonds « échelle bureau »
    'MAX_CLASSES': _env_int("REVISIA_MAX_CLASSES", 4096),
    'PROPOSITIONAL_MAX_ATOMS': 4,
    'HORN_MAX_ATOMS': 3,

    # Rapports
    'MAX_WITNESSES': _env_int("REVISIA_MAX_WITNESSES", 5),
}


# Définition des applications
INSTALLED_APPS = [
    "revision.apps.RevisionConfig",
]

# Pas de persistance : les commandes travaillent en mémoire
DATABASES = {}

TEST_RUNNER = 'django.test.runner.DiscoverRunner'

LANGUAGE_CODE = 'fr-fr'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# CONFIGURATION DES LOGS
# Les rapports sortent sur stdout, les journaux sur stderr :
# - Développement (DEBUG=True) : logs DEBUG
# - Sinon : WARNING+ pour garder les sorties de commande lisibles

LOG_LEVEL = os.getenv("LOG_LEVEL", 'DEBUG' if DEBUG else 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': LOG_LEVEL,
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'revision': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
}
