"""Pick the monitor implementation that fits a formula."""

from __future__ import annotations

import logging
from typing import Mapping, Protocol

from rosi.engine.bounded import BoundedMonitor, StepResult
from rosi.engine.untimed import BufferedSummaryMonitor, SummaryMonitor
from rosi.formula.analysis import UntimedClass, untimed_class
from rosi.formula.ast import Formula, is_bounded, render
from rosi.interval import Interval
from rosi.signal import Sample

logger = logging.getLogger(__name__)


class UnsupportedFormulaError(ValueError):
    """Raised for untimed formulas outside the classes with bounded-memory monitors."""


class Monitor(Protocol):
    steps: int

    @property
    def decided(self) -> bool: ...

    @property
    def operations(self) -> int: ...

    def step(self, sample: Sample) -> StepResult: ...


def create_monitor(
    formula: Formula,
    bounds: Mapping[str, Interval] | None = None,
    *,
    start_time: float = 0.0,
    delta: float | None = None,
    sliding_optimization: bool = True,
    freeze_decided: bool = True,
) -> Monitor:
    if is_bounded(formula):
        logger.info("Monitoring bounded formula")
        return BoundedMonitor(
            formula,
            bounds,
            start_time=start_time,
            sliding_optimization=sliding_optimization,
            freeze_decided=freeze_decided,
        )

    match = untimed_class(formula)
    if match.kind is UntimedClass.UNSUPPORTED:
        raise UnsupportedFormulaError(
            f"No bounded-memory monitor for untimed formula: {render(formula)}"
        )
    if match.atomic:
        logger.info("Monitoring untimed class %s over predicates (prefix robustness)", match.kind.value)
        return SummaryMonitor(match, start_time=start_time)

    logger.info("Monitoring untimed class %s over bounded operands (prefix robustness)", match.kind.value)
    return BufferedSummaryMonitor(
        formula,
        bounds,
        delta=delta,
        start_time=start_time,
        sliding_optimization=sliding_optimization,
    )
