"""
Online monitor for bounded-horizon formulas.

`Network` wires the worklist nodes of a formula for a given absolute root
horizon and feeds them one sample at a time. `BoundedMonitor` evaluates the
root at the start time and turns the root RoSI into a verdict after every
sample.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Mapping

from rosi.engine.counters import OpCounter
from rosi.engine.nodes import build_node
from rosi.engine.timeline import NodeUpdate
from rosi.engine.verdict import Verdict, verdict_of
from rosi.formula.analysis import UnboundedFormulaError
from rosi.formula.ast import Formula, is_bounded, predicates, render
from rosi.interval import Interval
from rosi.signal import Sample, SignalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepResult:
    """Root RoSI and verdict after one sample."""

    time: float
    rosi: Interval
    verdict: Verdict


class Network:
    """Worklist nodes of one formula over the absolute root horizon `hor`."""

    def __init__(
        self,
        formula: Formula,
        bounds: Mapping[str, Interval],
        hor: Interval,
        counter: OpCounter,
        *,
        optimize: bool = True,
    ):
        self.formula = formula
        self.start_time = hor.lo
        self._variables = sorted({v for p in predicates(formula) for v in p.variables})
        self._root = build_node(formula, hor, bounds, counter, optimize)
        self._last_time: float | None = None

    def feed(self, sample: Sample) -> NodeUpdate:
        if self._last_time is None:
            if sample.time != self.start_time:
                raise SignalError(f"First sample must be at start time {self.start_time}, got {sample.time}")
        elif sample.time <= self._last_time:
            raise SignalError(
                f"Sample times must be strictly increasing: {sample.time} after {self._last_time}"
            )
        missing = [v for v in self._variables if v not in sample.values]
        if missing:
            raise SignalError(f"Sample at {sample.time} is missing variables: {', '.join(missing)}")
        self._last_time = sample.time
        return self._root.update(sample.time, sample.values)


class BoundedMonitor:
    """
    Streaming RoSI of a bounded formula at the start time.

    Once the verdict is decided further samples are ignored and the frozen
    result is returned, unless `freeze_decided` is False.
    """

    def __init__(
        self,
        formula: Formula,
        bounds: Mapping[str, Interval] | None = None,
        *,
        start_time: float = 0.0,
        sliding_optimization: bool = True,
        freeze_decided: bool = True,
    ):
        if not is_bounded(formula):
            raise UnboundedFormulaError(f"Formula is not bounded: {render(formula)}")
        self.counter = OpCounter()
        self._network = Network(
            formula,
            dict(bounds or {}),
            Interval(start_time, start_time),
            self.counter,
            optimize=sliding_optimization,
        )
        self._freeze = freeze_decided
        self._result: StepResult | None = None
        self._rosi: Interval | None = None
        self.steps = 0

    @property
    def operations(self) -> int:
        return self.counter.count

    @property
    def decided(self) -> bool:
        return self._result is not None and self._result.verdict is not Verdict.UNKNOWN

    @property
    def result(self) -> StepResult | None:
        return self._result

    def step(self, sample: Sample) -> StepResult:
        if self._freeze and self.decided:
            return self._result

        update = self._network.feed(sample)
        self.steps += 1
        if update.final:
            self._rosi = update.final[0].rosi
        elif update.pending:
            self._rosi = update.pending[0].rosi

        self._result = StepResult(sample.time, self._rosi, verdict_of(self._rosi))
        logger.debug("t=%s rosi=%s verdict=%s", sample.time, self._rosi.render(), self._result.verdict.value)
        return self._result
