"""Resource guard settings, read from the environment at call time."""

import os

MAX_FAMILY_ENV = "SKEWLINES_MAX_FAMILY"
OVERRIDE_ENV = "SKEWLINES_ALLOW_LARGE"

DEFAULT_MAX_FAMILY = 10**6
# Largest prime for which the full A_{2,2} pipeline runs without an override.
DEFAULT_MAX_VERIFY_PRIME = 7


def max_family_size() -> int:
    raw = os.environ.get(MAX_FAMILY_ENV)
    return int(raw) if raw else DEFAULT_MAX_FAMILY


def guard_overridden() -> bool:
    return os.environ.get(OVERRIDE_ENV, "").strip().lower() in {"1", "true", "yes"}
