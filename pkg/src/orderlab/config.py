"""Global enumeration guards.

Every brute-force routine checks its work size against one of these ceilings.
``ORDERLAB_GUARD_SIZE`` in the environment overrides the quotient-size guard.
"""

import os

DEFAULT_GUARD_SIZE = 10**6


def guard_size() -> int:
    raw = os.environ.get("ORDERLAB_GUARD_SIZE")
    if raw is None:
        return DEFAULT_GUARD_SIZE
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_GUARD_SIZE
    return max(1, value)


# pairwise inverse search in count_units is quadratic; above this size we
# switch to solving the linear congruence per element
PAIRWISE_UNIT_LIMIT = 6000

DAVENPORT_MAX_ORDER = 64
BRANCH_NODE_LIMIT = 10**4
DEFAULT_PRINCIPAL_BOX = 50
DEFAULT_TRUNCATION = 4
