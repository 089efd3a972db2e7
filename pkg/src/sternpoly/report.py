"""Structured pass/fail results shared by all verification operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = ["VerificationReport", "pass_report", "fail_report", "jsonable"]


@dataclass
class VerificationReport:
    """Outcome of one verification sweep.

    A fail outcome always carries a witness that can be re-checked
    independently of the sweep that produced it.
    """

    claim: str
    domain: str
    outcome: str  # "pass" | "fail"
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "domain": self.domain,
            "outcome": self.outcome,
            "witness": jsonable(self.witness),
            "stats": jsonable(self.stats),
        }


def pass_report(claim: str, domain: str, **stats) -> VerificationReport:
    return VerificationReport(claim, domain, "pass", None, stats)


def fail_report(claim: str, domain: str, witness: dict, **stats) -> VerificationReport:
    return VerificationReport(claim, domain, "fail", witness, stats)


def jsonable(value):
    """Convert report payloads to JSON-safe, byte-deterministic values.

    Fractions become {"num": ..., "den": ...} decimal strings so arbitrary
    precision survives any JSON reader; floats are rounded to 12 decimal
    places so serialized bytes do not depend on summation order jitter.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, (float, np.floating)):
        return round(float(value), 12)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    return str(value)
