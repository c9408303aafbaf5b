"""Printed closed-form fixtures and their exact comparison."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..algebra import parse_expr, parse_poly

FIXTURE = "printed.txt"


@lru_cache(maxsize=None)
def raw_entries() -> dict[str, str]:
    text = resources.files(__name__).joinpath(FIXTURE).read_text()
    entries: dict[str, str] = {}
    key = None
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if line[0].isspace():
            if key is None:
                raise ValueError(f"continuation line before any key: {line!r}")
            entries[key] += " " + line.strip()
            continue
        key, _, expr = line.partition(":")
        key = key.strip()
        entries[key] = expr.strip()
    return entries


def poly(key: str):
    """Fixture as a polynomial in ``t``."""
    return parse_poly(raw_entries()[key])


def scalar(key: str):
    """Fixture as a rational function of the couplings (no ``t``)."""
    return parse_expr(raw_entries()[key])


def keys() -> list[str]:
    return list(raw_entries())
