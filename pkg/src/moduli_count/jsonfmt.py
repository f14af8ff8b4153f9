"""Shared JSON conventions."""

import json

SAFE_INT = 2**53


def json_number(n: int):
    """Integers beyond the exactly-representable double range become decimal strings."""
    return n if -SAFE_INT <= n <= SAFE_INT else str(n)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(",", ":"))
