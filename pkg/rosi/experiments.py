"""
Synthetic early-termination and cost experiments.

`early_termination_suite` streams randomly generated traces, some with an
injected overshoot, through a bounded monitor and records how many samples
each run needed before its verdict was decided. `operation_ratio` compares the
incremental engine's operation count with recomputing the offline RoSI after
every sample.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
import random
from statistics import fmean
from typing import Any

from rosi.engine.bounded import BoundedMonitor
from rosi.engine.verdict import Verdict
from rosi.formula.ast import Formula
from rosi.formula.templates import overshoot
from rosi.interval import Interval
from rosi.oracle import naive_online
from rosi.signal import PartialSignal, Sample

logger = logging.getLogger(__name__)


# ---- Traces --------------------------------------------------------------------------


def synthetic_trace(
    rng: random.Random,
    length: int,
    *,
    variable: str = "x",
    threshold: float = 5.0,
    floor: float = -5.0,
    dt: float = 1.0,
    violation_at: int | None = None,
) -> PartialSignal:
    """
    Samples every `dt` with values drawn from [floor, threshold).

    When `violation_at` is given that sample overshoots: its value lies in
    (threshold, threshold + 1].
    """

    sig = PartialSignal((variable,), 0.0)
    for i in range(length):
        value = rng.uniform(floor, threshold - 1e-3)
        if i == violation_at:
            value = threshold + rng.uniform(1e-3, 1.0)
        sig.append(Sample(i * dt, {variable: value}))
    return sig


# ---- Early termination ---------------------------------------------------------------


@dataclass(frozen=True)
class TraceRun:
    length: int
    consumed: int
    violation_at: int | None
    verdict: Verdict

    @property
    def fraction(self) -> float:
        return self.consumed / self.length


@dataclass(frozen=True)
class EarlyStopReport:
    runs: tuple[TraceRun, ...]

    @property
    def violating(self) -> tuple[TraceRun, ...]:
        return tuple(r for r in self.runs if r.violation_at is not None)

    @property
    def mean_fraction(self) -> float:
        return fmean(r.fraction for r in self.runs)

    @property
    def stopped_early(self) -> bool:
        """Every violating run was falsified before its last sample."""
        return all(r.consumed < r.length and r.verdict is Verdict.FALSIFIED for r in self.violating)

    def to_dict(self) -> dict[str, Any]:
        return {
            "traces": len(self.runs),
            "violating": len(self.violating),
            "consumed": sum(r.consumed for r in self.runs),
            "available": sum(r.length for r in self.runs),
            "mean_fraction": self.mean_fraction,
            "stopped_early": self.stopped_early,
        }


def monitor_until_decided(
    formula: Formula,
    sig: PartialSignal,
    bounds: dict[str, Interval] | None = None,
) -> tuple[int, Verdict]:
    """Stream `sig` and stop at the first decided verdict; returns (consumed, verdict)."""
    monitor = BoundedMonitor(formula, bounds or sig.bounds, start_time=sig.start_time)
    verdict = Verdict.UNKNOWN
    for sample in sig.samples:
        verdict = monitor.step(sample).verdict
        if monitor.decided:
            break
    return monitor.steps, verdict


def early_termination_suite(
    count: int = 1000,
    length: int = 1000,
    *,
    violation_rate: float = 0.8,
    threshold: float = 5.0,
    seed: int = 0,
) -> EarlyStopReport:
    """
    Monitor `G[0, length-1](x < threshold)` over `count` synthetic traces.

    A trace violates with probability `violation_rate`; the overshooting
    sample index is uniform over all but the last sample.
    """

    rng = random.Random(seed)
    formula = overshoot("x", 0.0, float(length - 1), threshold)
    bounds = {"x": Interval(-10.0, 10.0)}

    runs: list[TraceRun] = []
    for _ in range(count):
        violation_at = rng.randrange(length - 1) if rng.random() < violation_rate else None
        sig = synthetic_trace(rng, length, threshold=threshold, violation_at=violation_at)
        consumed, verdict = monitor_until_decided(formula, sig, bounds)
        runs.append(TraceRun(length, consumed, violation_at, verdict))

    report = EarlyStopReport(tuple(runs))
    logger.info(
        "Early termination: %d traces, %d violating, mean consumed fraction %.3f",
        len(runs),
        len(report.violating),
        report.mean_fraction,
    )
    return report


# ---- Cost ----------------------------------------------------------------------------


@dataclass(frozen=True)
class CostReport:
    engine_operations: int
    naive_operations: int

    @property
    def ratio(self) -> float:
        return self.naive_operations / max(self.engine_operations, 1)


def operation_ratio(
    formula: Formula,
    sig: PartialSignal,
    *,
    sliding_optimization: bool = True,
) -> CostReport:
    """Operation counts of the incremental engine and of per-prefix offline recomputation."""
    monitor = BoundedMonitor(
        formula,
        sig.bounds,
        start_time=sig.start_time,
        sliding_optimization=sliding_optimization,
        freeze_decided=False,
    )
    for sample in sig.samples:
        monitor.step(sample)

    naive = sum(result.evaluations for result in naive_online(formula, sig))
    report = CostReport(monitor.operations, naive)
    logger.info(
        "Operations: engine %d, naive %d (ratio %.1f)",
        report.engine_operations,
        report.naive_operations,
        report.ratio,
    )
    return report
