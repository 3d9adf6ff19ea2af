"""
Runtime limits for the enumeration and Groebner kernels.
Values come from settings.CONICBUNDLE_LIMITS when Django is configured and
fall back to the built-in defaults for plain library use.
"""
from django.conf import settings

DEFAULTS = {
    "FIELD_MAX_CARDINALITY": 2 ** 64,
    "FIELD_TABLE_MAX": 2 ** 16,
    "GROEBNER_DEGREE_CAP": 40,
    "GROEBNER_PAIR_CAP": 100_000,
    "LINES_MAX_Q": 16,
    "LINES_MAX_CANDIDATES": 20_000_000,
    "COVER_MAX_FIELD": 2 ** 12,
    "THREEFOLD_MAX_POINTS": 10_000_000,
    "THREEFOLD_HARD_CAP": 1_000_000_000,
    "QUADRIC_MAX_DIMENSION": 8,
    "QUADRIC_MAX_Q": 4,
    "THREADS": 1,
}


def get_limit(name: str) -> int:
    """Return the configured limit ``name``."""
    if name not in DEFAULTS:
        raise KeyError(f"unknown limit {name!r}")
    configured = {}
    if settings.configured:
        configured = getattr(settings, "CONICBUNDLE_LIMITS", {}) or {}
    return int(configured.get(name, DEFAULTS[name]))


def resolve_threads(threads: int | None) -> int:
    """Explicit thread count, else the configured default; never below 1."""
    if threads is None:
        threads = get_limit("THREADS")
    return max(1, int(threads))
