"""Size caps shared by the enumeration routines.

Each default can be overridden through an environment variable so the CLI
and library agree on what counts as "large".
"""
from __future__ import annotations

import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


# full O(n^3)-equivalent validation up to this size, spot checks above
VALIDATION_BOUND = _env_int("NORMCONG_VALIDATION_BOUND", 5000)
PRODUCT_BOUND = _env_int("NORMCONG_PRODUCT_BOUND", 5000)
ISOMORPHISM_BOUND = _env_int("NORMCONG_ISO_BOUND", 12)
TRANSFORMATION_BOUND = _env_int("NORMCONG_TN_BOUND", 3125)
CYCLIC_BOUND = _env_int("NORMCONG_CYCLIC_BOUND", 5000)
# T4-safe defaults; T5 needs the large profile
NORSUB_BOUND = _env_int("NORMCONG_NORSUB_BOUND", 256)
CONG_BOUND = _env_int("NORMCONG_CONG_BOUND", 256)
UNITS_BOUND = _env_int("NORMCONG_UNITS_BOUND", 24)

LARGE_NORSUB_BOUND = 5000
LARGE_CONG_BOUND = 5000
LARGE_UNITS_BOUND = 720
