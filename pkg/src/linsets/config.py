"""Budget caps shared by the enumeration routines.

``LINSET_BUDGET`` (an integer) overrides both the field-table cap and the
vector-enumeration cap.
"""
import os

DEFAULT_TABLE_LIMIT = 2**24
DEFAULT_ENUM_LIMIT = 2**24
DEFAULT_SUBSPACE_LIMIT = 10**6


def _env_budget():
    raw = os.environ.get("LINSET_BUDGET")
    if not raw:
        return None
    return int(raw)


def table_limit():
    return _env_budget() or DEFAULT_TABLE_LIMIT


def enum_limit():
    return _env_budget() or DEFAULT_ENUM_LIMIT


def subspace_limit():
    return DEFAULT_SUBSPACE_LIMIT
