from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .padic import PAdicNumber, agreement, from_rational
from .util import format_rational


@dataclass
class IdentityReport:
    """Outcome of checking one identity instance: pass iff agreement >= required."""

    name: str
    params: dict[str, Any] = field(default_factory=dict)
    agreement: int = 0
    required: int = 0

    @property
    def passed(self):
        return self.agreement >= self.required

    def to_json(self):
        return {
            "name": self.name,
            "params": {k: _param(v) for k, v in self.params.items()},
            "agreement": self.agreement,
            "required": self.required,
            "verdict": "pass" if self.passed else "fail",
        }


def _param(value: Any):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_param(v) for v in value]
    if isinstance(value, PAdicNumber):
        return str(value)
    return value


# Stands in for "infinitely many digits" when both sides are exact rationals.
EXACT = 10**6


def compare(lhs: PAdicNumber | Fraction, rhs: PAdicNumber | Fraction) -> int:
    """Agreement of two values in absolute p-adic digits; exact equality of rationals is EXACT."""
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
        return EXACT if lhs == rhs else 0
    if isinstance(lhs, Fraction):
        assert isinstance(rhs, PAdicNumber)
        lhs = from_rational(lhs, rhs.prime, rhs.aprec)
    if isinstance(rhs, Fraction):
        rhs = from_rational(rhs, lhs.prime, lhs.aprec)
    return agreement(lhs, rhs)


def check(name: str, lhs, rhs, required: int, **params) -> IdentityReport:
    return IdentityReport(name, params, compare(lhs, rhs), required)
