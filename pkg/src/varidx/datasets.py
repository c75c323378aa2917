"""Bundled datasets used by the CLI and the regression targets.

``murthy41``: times till failure for 20 units.
``coin3``: outcome counts from 200 runs of tossing a coin three times
and recording the number of heads (outcomes 0..3).
"""

from __future__ import annotations

from .errors import InvalidParameterError

MURTHY41 = (
    11.24, 1.92, 12.74, 22.48, 9.60, 11.50, 8.86, 7.75, 5.73, 9.37,
    30.42, 9.17, 10.20, 5.52, 5.85, 38.14, 2.99, 16.58, 18.92, 13.36,
)

COIN3 = (20, 63, 84, 33)

_REGISTRY = {
    "murthy41": MURTHY41,
    "coin3": COIN3,
}


def names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def load(name: str):
    """Return the raw values of a bundled dataset by name."""
    try:
        return _REGISTRY[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown dataset '{name}' (available: {', '.join(names())})"
        ) from None
