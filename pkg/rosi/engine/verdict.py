from __future__ import annotations

from enum import Enum

from rosi.interval import Interval


class Verdict(str, Enum):
    SATISFIED = "satisfied"
    FALSIFIED = "falsified"
    UNKNOWN = "unknown"


def verdict_of(rosi: Interval) -> Verdict:
    """Falsified when every completion is negative; satisfied when none is (zero counts as satisfied)."""
    if rosi.hi < 0:
        return Verdict.FALSIFIED
    if rosi.lo >= 0:
        return Verdict.SATISFIED
    return Verdict.UNKNOWN
