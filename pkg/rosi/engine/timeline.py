"""
Extended time line used by worklists.

Robustness functions are right-continuous and piecewise-constant. Besides
plain instants `t` they may change value "just after" a sample time, written
`t+` (`Instant(t, after=True)`). A worklist entry holds its value from its own
instant up to the next entry.
"""

from __future__ import annotations

from bisect import bisect_right
import math
from typing import NamedTuple, Sequence

from rosi.interval import Interval

# Times live on a 1e-9 grid so that an edge shifted by a window bound and back
# compares equal to the original.
TIME_DIGITS = 9


def snap(t: float) -> float:
    return round(t, TIME_DIGITS) if math.isfinite(t) else t


class Instant(NamedTuple):
    at: float
    after: bool = False

    @classmethod
    def of(cls, t: float, after: bool = False) -> Instant:
        return cls(snap(t), after)

    def shift(self, offset: float) -> Instant:
        return Instant(snap(self.at + offset), self.after)

    def right(self) -> Instant:
        return Instant(self.at, True)


class WorklistEntry(NamedTuple):
    time: Instant
    rosi: Interval


class NodeUpdate(NamedTuple):
    """
    Result of feeding one sample to a node.

    `final` entries cover [previous frontier, frontier) and never change again.
    `pending` entries cover [frontier, horizon end] and may still be refined;
    pending is empty once the frontier has passed the horizon end.
    """

    final: list[WorklistEntry]
    frontier: Instant
    pending: list[WorklistEntry]


def clamp(t: Instant, lo: Instant, hi: Instant) -> Instant:
    return max(lo, min(t, hi))


def value_at(entries: Sequence[WorklistEntry], t: Instant) -> Interval:
    """Value of the piecewise-constant function described by `entries` at `t`."""
    index = bisect_right(entries, t, key=lambda e: e.time) - 1
    if index < 0:
        raise ValueError(f"No worklist entry at or before {t}")
    return entries[index].rosi
