"""Size guards for the search-heavy operations."""

import os

DEFAULT_MAX_CARRIER = 81
MAX_ATOMS = 16


def max_carrier() -> int:
    """Carrier cap for exhaustive searches; MRKIT_MAX_CARRIER overrides."""
    raw = os.environ.get("MRKIT_MAX_CARRIER")
    if raw is None:
        return DEFAULT_MAX_CARRIER
    return int(raw)
