"""
Closed intervals over the extended reals.

Every robustness value in the package is an `Interval`. The module offers
exactly the operations the semantics needs (negation, scalar shift, Minkowski
sum of time windows, componentwise min/max and intersection) plus an exact
textual round trip.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
import re

INF = math.inf


class IntervalError(ValueError):
    """Raised for malformed intervals or undefined endpoint arithmetic."""


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval [lo, hi]; `EMPTY` is the only value with lo > hi."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise IntervalError(f"NaN endpoint in interval ({self.lo}, {self.hi})")
        if self.lo > self.hi and not (self.lo == INF and self.hi == -INF):
            raise IntervalError(f"Interval lower bound {self.lo} exceeds upper bound {self.hi}")

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_singular(self) -> bool:
        return self.lo == self.hi

    def contains(self, other: Interval) -> bool:
        """Containment order: every point of `other` lies in `self`."""
        if other.is_empty:
            return True
        return self.lo <= other.lo and other.hi <= self.hi

    def render(self) -> str:
        if self.is_empty:
            return "empty"
        return f"[{_render_endpoint(self.lo)}, {_render_endpoint(self.hi)}]"

    def __str__(self) -> str:
        return self.render()


EMPTY = Interval(INF, -INF)
UNBOUNDED = Interval(-INF, INF)


def singular(value: float) -> Interval:
    return Interval(value, value)


# ---- Operations ----------------------------------------------------------------------


def neg(i: Interval) -> Interval:
    if i.is_empty:
        return EMPTY
    return Interval(-i.hi, -i.lo)


def add_scalar(c: float, i: Interval) -> Interval:
    if i.is_empty:
        return EMPTY
    return Interval(c + i.lo, c + i.hi)


def minkowski_sum(i1: Interval, i2: Interval) -> Interval:
    """Endpoint-wise sum; only defined when no endpoint pair adds -inf and +inf."""
    if i1.is_empty or i2.is_empty:
        return EMPTY
    if _opposite_infinities(i1.lo, i2.lo) or _opposite_infinities(i1.hi, i2.hi):
        raise IntervalError(f"Undefined sum of {i1.render()} and {i2.render()}")
    return Interval(i1.lo + i2.lo, i1.hi + i2.hi)


def int_min(i1: Interval, i2: Interval) -> Interval:
    return Interval(min(i1.lo, i2.lo), min(i1.hi, i2.hi))


def int_max(i1: Interval, i2: Interval) -> Interval:
    return Interval(max(i1.lo, i2.lo), max(i1.hi, i2.hi))


def intersect(i1: Interval, i2: Interval) -> Interval:
    lo = max(i1.lo, i2.lo)
    hi = min(i1.hi, i2.hi)
    if hi < lo:
        return EMPTY
    return Interval(lo, hi)


# ---- Text ----------------------------------------------------------------------------


_INTERVAL_RE = re.compile(r"^\s*\[\s*([^,\s]+)\s*,\s*([^\]\s]+)\s*\]\s*$")


def parse_interval(text: str) -> Interval:
    """Inverse of `Interval.render`."""
    if text.strip() == "empty":
        return EMPTY
    match = _INTERVAL_RE.match(text)
    if not match:
        raise IntervalError(f"Malformed interval text: {text!r}")
    try:
        lo, hi = float(match.group(1)), float(match.group(2))
    except ValueError as exc:
        raise IntervalError(f"Malformed interval text: {text!r}") from exc
    return Interval(lo, hi)


def _render_endpoint(value: float) -> str:
    # repr() round-trips floats exactly and spells infinities as inf / -inf
    return repr(value)


def _opposite_infinities(a: float, b: float) -> bool:
    return math.isinf(a) and math.isinf(b) and a != b
