"""
Project settings for the conicbundle toolkit.
There is no database or web surface; settings only carry logging and the
runtime limits that guard the enumeration kernels.
"""
# conicbundle/settings.py
from pathlib import Path
import os

# Load environment variables from .env file
from dotenv import load_dotenv
BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / ".env")

# --------------------
# BASE / DEBUG / SECRET
# --------------------
# Nothing is signed or served; the key only satisfies Django's startup checks.
SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "conicbundle-local-key")
DEBUG = os.environ.get("DJANGO_DEBUG", "False").lower() == "true"
ALLOWED_HOSTS: list[str] = []

# --------------------
# APPS
# --------------------
INSTALLED_APPS = [
    "field",
    "poly",
    "cubic",
    "cover",
    "zeta",
    "cartier",
    "quadrics",
    "cli",
]

DATABASES: dict = {}
USE_TZ = True
TIME_ZONE = "UTC"


# --------------------
# RUNTIME LIMITS
# --------------------
def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(f"CONICBUNDLE_{name}")
    if raw is None or raw == "":
        return default
    return int(raw)


CONICBUNDLE_LIMITS = {
    "FIELD_MAX_CARDINALITY": _env_int("FIELD_MAX_CARDINALITY", 2 ** 64),
    "FIELD_TABLE_MAX": _env_int("FIELD_TABLE_MAX", 2 ** 16),
    "GROEBNER_DEGREE_CAP": _env_int("GROEBNER_DEGREE_CAP", 40),
    "GROEBNER_PAIR_CAP": _env_int("GROEBNER_PAIR_CAP", 100_000),
    "LINES_MAX_Q": _env_int("LINES_MAX_Q", 16),
    "LINES_MAX_CANDIDATES": _env_int("LINES_MAX_CANDIDATES", 20_000_000),
    "COVER_MAX_FIELD": _env_int("COVER_MAX_FIELD", 2 ** 12),
    "THREEFOLD_MAX_POINTS": _env_int("THREEFOLD_MAX_POINTS", 10_000_000),
    "THREEFOLD_HARD_CAP": _env_int("THREEFOLD_HARD_CAP", 1_000_000_000),
    "QUADRIC_MAX_DIMENSION": _env_int("QUADRIC_MAX_DIMENSION", 8),
    "QUADRIC_MAX_Q": _env_int("QUADRIC_MAX_Q", 4),
    "THREADS": _env_int("THREADS", 1),
}

# --------------------
# LOGGING
# --------------------
# Reports go to stdout, so log records stay on stderr.
LOG_LEVEL = os.environ.get("CONICBUNDLE_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": LOG_LEVEL,
    },
}
