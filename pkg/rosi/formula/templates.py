"""Parameterized requirement templates for step-response style properties."""

from __future__ import annotations

from rosi.formula.ast import Formula
from rosi.formula.parser import parse


def overshoot(var: str, a: float, b: float, c: float) -> Formula:
    """Within [a, b] the signal stays below `c`."""
    return parse(f"G[{a!r}, {b!r}] ({var} < {c!r})")


def transient(var: str, a: float, b: float, c: float, d: float, e: float) -> Formula:
    """Within [a, b], whenever |var| exceeds `c` it settles below `e` within `d`."""
    return parse(f"G[{a!r}, {b!r}] (abs({var}) > {c!r} implies F[0, {d!r}] (abs({var}) < {e!r}))")
