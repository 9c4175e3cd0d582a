"""Shared verdict type for all checkers.

Every checker returns a Verdict rather than a bare bool so that refutations
carry a witness and bound-truncated runs can be reported as inconclusive
instead of silently passing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

EXIT_CODES = {VERIFIED: 0, REFUTED: 1, INCONCLUSIVE: 2, "error": 3}


@dataclass
class Verdict:
    status: str
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == VERIFIED

    @classmethod
    def verified(cls, witness=None, **details) -> "Verdict":
        return cls(VERIFIED, witness, details)

    @classmethod
    def refuted(cls, witness=None, **details) -> "Verdict":
        return cls(REFUTED, witness, details)

    @classmethod
    def inconclusive(cls, witness=None, **details) -> "Verdict":
        return cls(INCONCLUSIVE, witness, details)

    def to_json(self) -> dict:
        return {
            "verdict": self.status,
            "witness": _jsonable(self.witness),
            "details": _jsonable(self.details),
        }


def _jsonable(x):
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return repr(x)


class SpanlabError(Exception):
    """Base class for spanlab errors."""


class ShapeSpecError(SpanlabError):
    """Malformed shape request (bad arities, mismatched simplex map)."""


class NoLimitError(SpanlabError):
    """The requested limit does not exist in the base category."""


class ResourceError(SpanlabError):
    """Enumeration would exceed the configured ceiling."""


class FootMismatchError(SpanlabError):
    """Spans or correspondences do not share the required middle object."""
