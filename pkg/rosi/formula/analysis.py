"""
Static analyses over formulas: time horizons, `last`, window width and buffer
size for untimed monitors, and recognition of the untimed classes that admit
bounded-memory monitoring.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import logging
import math
from typing import Iterator

from rosi.formula.ast import (
    Always,
    And,
    Eventually,
    Formula,
    NodeKind,
    Or,
    Path,
    Predicate,
    Until,
    is_bounded,
    walk,
)
from rosi.interval import INF, Interval, minkowski_sum

logger = logging.getLogger(__name__)


class UnboundedFormulaError(ValueError):
    """Raised when an analysis needs a bounded formula but finds an untimed operator."""


# ---- Horizons ------------------------------------------------------------------------


@dataclass(frozen=True)
class HorizonAnnotation:
    """Relative horizon of every node, keyed by its path from the root."""

    horizons: dict[Path, Interval]

    def of(self, path: Path) -> Interval:
        return self.horizons[path]

    def items(self) -> Iterator[tuple[Path, Interval]]:
        return iter(self.horizons.items())

    def last(self) -> float:
        return max(h.hi for h in self.horizons.values())


def compute_horizons(f: Formula) -> HorizonAnnotation:
    if not is_bounded(f):
        raise UnboundedFormulaError("Horizons are only defined for bounded formulas")
    horizons: dict[Path, Interval] = {}
    _annotate(f, (), Interval(0.0, 0.0), horizons)
    return HorizonAnnotation(horizons)


def child_horizons(f: Formula, hor: Interval) -> tuple[Interval, ...]:
    """Horizons of the children of `f` given the horizon of `f` itself."""
    match f:
        case Always(window=window) | Eventually(window=window):
            return (minkowski_sum(window, hor),)
        case Until(window=window):
            # the left operand is needed from the evaluation point onwards
            return (
                minkowski_sum(Interval(0.0, window.hi), hor),
                minkowski_sum(window, hor),
            )
    return tuple(hor for _ in f.children())


def _annotate(f: Formula, path: Path, hor: Interval, out: dict[Path, Interval]) -> None:
    out[path] = hor
    for index, (child, child_hor) in enumerate(zip(f.children(), child_horizons(f, hor))):
        _annotate(child, path + (index,), child_hor, out)


def compute_last(f: Formula) -> float:
    """Latest time offset any subformula needs; +inf when an untimed operator occurs."""
    if not is_bounded(f):
        return INF
    return compute_horizons(f).last()


# ---- Untimed classes -----------------------------------------------------------------


class UntimedClass(str, Enum):
    G = "G"
    F = "F"
    U = "U"
    GF = "GF"
    FG = "FG"
    G_OR_F = "G_or_F"
    F_AND_G = "F_and_G"
    F_AND_F = "F_and_F"
    G_OR_G = "G_or_G"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class UntimedMatch:
    """Recognized class with its bounded operands (`psi` is None for one-operand classes)."""

    kind: UntimedClass
    phi: Formula | None = None
    psi: Formula | None = None

    @property
    def operands(self) -> tuple[Formula, ...]:
        return tuple(op for op in (self.phi, self.psi) if op is not None)

    @property
    def atomic(self) -> bool:
        return all(isinstance(op, Predicate) for op in self.operands)


_UNSUPPORTED = UntimedMatch(UntimedClass.UNSUPPORTED)


def untimed_class(f: Formula) -> UntimedMatch:
    match = _classify(f)
    if match.kind is not UntimedClass.UNSUPPORTED and not all(is_bounded(op) for op in match.operands):
        match = _UNSUPPORTED
    logger.debug("Untimed class of formula: %s", match.kind.value)
    return match


def _untimed(f: Formula, kind: NodeKind) -> bool:
    return f.kind is kind


def _classify(f: Formula) -> UntimedMatch:
    if _untimed(f, NodeKind.ALWAYS_UNTIMED):
        inner = f.child
        if _untimed(inner, NodeKind.EVENTUALLY_UNTIMED):
            return UntimedMatch(UntimedClass.GF, inner.child)
        if isinstance(inner, Or):
            for phi, other in ((inner.left, inner.right), (inner.right, inner.left)):
                if _untimed(other, NodeKind.EVENTUALLY_UNTIMED):
                    return UntimedMatch(UntimedClass.G_OR_F, phi, other.child)
                if _untimed(other, NodeKind.ALWAYS_UNTIMED):
                    return UntimedMatch(UntimedClass.G_OR_G, phi, other.child)
        return UntimedMatch(UntimedClass.G, inner)

    if _untimed(f, NodeKind.EVENTUALLY_UNTIMED):
        inner = f.child
        if _untimed(inner, NodeKind.ALWAYS_UNTIMED):
            return UntimedMatch(UntimedClass.FG, inner.child)
        if isinstance(inner, And):
            for phi, other in ((inner.left, inner.right), (inner.right, inner.left)):
                if _untimed(other, NodeKind.ALWAYS_UNTIMED):
                    return UntimedMatch(UntimedClass.F_AND_G, phi, other.child)
                if _untimed(other, NodeKind.EVENTUALLY_UNTIMED):
                    return UntimedMatch(UntimedClass.F_AND_F, phi, other.child)
        return UntimedMatch(UntimedClass.F, inner)

    if _untimed(f, NodeKind.UNTIL_UNTIMED):
        return UntimedMatch(UntimedClass.U, f.left, f.right)

    return _UNSUPPORTED


# ---- Window width and buffer size ----------------------------------------------------


def window_width(f: Formula) -> float:
    """
    Largest `last` over the bounded subformulas an untimed monitor evaluates.

    For a bounded formula this is the maximum over its proper subformulas; for a
    recognized untimed class it is the maximum over the class operands.
    """

    if is_bounded(f):
        return max((compute_last(sub) for path, sub in walk(f) if path), default=0.0)
    match = untimed_class(f)
    if match.kind is UntimedClass.UNSUPPORTED:
        raise UnboundedFormulaError("Formula has an unbounded subformula outside the supported classes")
    return max(compute_last(op) for op in match.operands)


def compute_k(f: Formula, delta: float) -> int:
    if delta <= 0:
        raise ValueError(f"Minimum sample gap must be positive, got {delta}")
    return math.ceil(window_width(f) / delta)
