"""
Bounded-memory monitors for untimed formula classes.

Both monitors report prefix robustness: the untimed operator quantifies over
the sample times observed so far.

`SummaryMonitor` handles classes whose operands are predicates and keeps at
most two intervals. `BufferedSummaryMonitor` handles bounded operands: an
embedded `Network` per operand produces the operand's robustness at every
sample time, values that can no longer change are absorbed into the summary,
and the remaining (at most k) recent values are folded in on demand.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, fields, replace
import logging
from typing import Callable, Mapping, Sequence

from rosi.engine.bounded import Network, StepResult
from rosi.engine.counters import OpCounter
from rosi.engine.timeline import Instant, WorklistEntry, snap, value_at
from rosi.engine.verdict import verdict_of
from rosi.formula.analysis import UntimedClass, UntimedMatch, compute_k, untimed_class, window_width
from rosi.formula.ast import Formula, Predicate
from rosi.interval import INF, Interval, int_max, int_min, singular
from rosi.signal import Sample, SignalError

logger = logging.getLogger(__name__)

TOP = Interval(INF, INF)
BOTTOM = Interval(-INF, -INF)


class DeltaViolationError(ValueError):
    """Raised when samples arrive closer than the configured minimum gap."""


class MissingDeltaError(ValueError):
    """Raised when a bounded-operand untimed formula is monitored without a minimum gap."""


# ---- Summary state and recurrences ---------------------------------------------------


@dataclass
class SummaryState:
    """
    Accumulators of one untimed class; unused slots stay None.

    s: running min (G) or max (F)
    m: running min or max of the left operand (U, F_and_F, G_or_G)
    t: class value (G_or_F, F_and_G, F_and_F, G_or_G)
    u: until value
    """

    kind: UntimedClass
    s: Interval | None = None
    m: Interval | None = None
    t: Interval | None = None
    u: Interval | None = None

    def size(self) -> int:
        return sum(getattr(self, f.name) is not None for f in fields(self) if f.name != "kind")


def initial_state(kind: UntimedClass) -> SummaryState:
    """State before the first sample; every slot holds the identity of its reduction."""
    match kind:
        case UntimedClass.G:
            return SummaryState(kind, s=TOP)
        case UntimedClass.F:
            return SummaryState(kind, s=BOTTOM)
        case UntimedClass.U:
            return SummaryState(kind, m=TOP, u=BOTTOM)
        case UntimedClass.G_OR_F:
            return SummaryState(kind, t=TOP)
        case UntimedClass.F_AND_G:
            return SummaryState(kind, t=BOTTOM)
        case UntimedClass.F_AND_F:
            return SummaryState(kind, m=BOTTOM, t=BOTTOM)
        case UntimedClass.G_OR_G:
            return SummaryState(kind, m=TOP, t=TOP)
        case UntimedClass.GF | UntimedClass.FG:
            return SummaryState(kind)
    raise ValueError(f"No summary for untimed class {kind.value}")


def step_G(state: SummaryState, p: Interval) -> Interval:
    state.s = int_min(state.s, p)
    return state.s


def step_F(state: SummaryState, p: Interval) -> Interval:
    state.s = int_max(state.s, p)
    return state.s


def step_U(state: SummaryState, p: Interval, q: Interval) -> Interval:
    state.m = int_min(state.m, p)
    state.u = int_max(state.u, int_min(state.m, q))
    return state.u


def step_G_or_F(state: SummaryState, p: Interval, q: Interval) -> Interval:
    state.t = int_max(q, int_min(p, state.t))
    return state.t


def step_F_and_G(state: SummaryState, p: Interval, q: Interval) -> Interval:
    state.t = int_min(q, int_max(p, state.t))
    return state.t


def step_GF(state: SummaryState, p: Interval) -> Interval:
    return p


step_FG = step_GF


def step_F_and_F(state: SummaryState, p: Interval, q: Interval) -> Interval:
    state.t = int_max(state.t, int_max(int_min(q, state.m), int_min(q, p)))
    state.m = int_max(state.m, p)
    return state.t


def step_G_or_G(state: SummaryState, p: Interval, q: Interval) -> Interval:
    state.t = int_min(state.t, int_min(int_max(q, state.m), int_max(q, p)))
    state.m = int_min(state.m, p)
    return state.t


_STEPS: dict[UntimedClass, Callable[..., Interval]] = {
    UntimedClass.G: step_G,
    UntimedClass.F: step_F,
    UntimedClass.U: step_U,
    UntimedClass.G_OR_F: step_G_or_F,
    UntimedClass.F_AND_G: step_F_and_G,
    UntimedClass.GF: step_GF,
    UntimedClass.FG: step_FG,
    UntimedClass.F_AND_F: step_F_and_F,
    UntimedClass.G_OR_G: step_G_or_G,
}


def absorb(state: SummaryState, values: Sequence[Interval]) -> Interval:
    """Advance `state` by one sample's operand values and return the class value."""
    return _STEPS[state.kind](state, *values)


def step_general(state: SummaryState, buffered: Sequence[Sequence[Interval]]) -> Interval:
    """Fold buffered operand values into a copy of `state`; `state` itself is untouched."""
    scratch = replace(state)
    result = None
    for values in buffered:
        result = absorb(scratch, values)
    return result


# ---- Monitors ------------------------------------------------------------------------


class SummaryMonitor:
    """Constant-memory monitor for untimed classes over predicates."""

    decided = False

    def __init__(self, match: UntimedMatch, *, start_time: float = 0.0):
        if not match.atomic:
            raise ValueError("SummaryMonitor needs predicate operands")
        self.kind = match.kind
        self.counter = OpCounter()
        self._operands: tuple[Predicate, ...] = match.operands
        self._state = initial_state(match.kind)
        self._start_time = start_time
        self._last_time: float | None = None
        self.steps = 0

    @property
    def state(self) -> SummaryState:
        return self._state

    @property
    def operations(self) -> int:
        return self.counter.count

    def step(self, sample: Sample) -> StepResult:
        _check_order(sample, self._start_time, self._last_time)
        self._last_time = sample.time
        self.steps += 1
        try:
            values = [singular(p.evaluate(sample.values)) for p in self._operands]
        except KeyError as exc:
            raise SignalError(f"Sample at {sample.time} is missing variable {exc.args[0]}") from exc
        self.counter.add(len(values) + 2)
        rosi = absorb(self._state, values)
        return StepResult(sample.time, rosi, verdict_of(rosi))


class BufferedSummaryMonitor:
    """O(k)-memory monitor for untimed classes over bounded operands."""

    decided = False

    def __init__(
        self,
        formula: Formula,
        bounds: Mapping[str, Interval] | None = None,
        *,
        delta: float | None = None,
        start_time: float = 0.0,
        sliding_optimization: bool = True,
    ):
        match = untimed_class(formula)
        self.kind = match.kind
        self.width = window_width(formula)
        if delta is None and self.width > 0:
            raise MissingDeltaError(
                f"Untimed class {match.kind.value} over bounded operands needs a minimum sample gap (--delta)"
            )
        if delta is not None and delta <= 0:
            raise DeltaViolationError(f"Minimum sample gap must be positive, got {delta}")
        self.delta = delta
        # zero-width operands resolve at their own sample time
        self.k = compute_k(formula, delta) if delta is not None else 0
        self.counter = OpCounter()
        root_hor = Interval(start_time, INF)
        self._networks = [
            Network(op, dict(bounds or {}), root_hor, self.counter, optimize=sliding_optimization)
            for op in match.operands
        ]
        self._functions: list[list[WorklistEntry]] = [[] for _ in match.operands]
        self._buffer: deque[float] = deque()
        self._state = initial_state(match.kind)
        self._output: Interval | None = None
        self._last_time: float | None = None
        self.steps = 0
        logger.debug("Buffered %s monitor: width=%s delta=%s k=%d", self.kind.value, self.width, delta, self.k)

    @property
    def state(self) -> SummaryState:
        return self._state

    @property
    def buffered(self) -> int:
        return len(self._buffer)

    @property
    def operations(self) -> int:
        return self.counter.count

    def step(self, sample: Sample) -> StepResult:
        if (
            self.delta is not None
            and self._last_time is not None
            and snap(sample.time - self._last_time) < self.delta
        ):
            raise DeltaViolationError(
                f"Samples at {self._last_time} and {sample.time} are closer than the minimum gap {self.delta}"
            )
        views = []
        for network, function in zip(self._networks, self._functions):
            update = network.feed(sample)
            function.extend(update.final)
            views.append(function + update.pending)
        self._last_time = sample.time
        self.steps += 1
        self._buffer.append(sample.time)

        # operand values at these sample times depend only on observed data
        now = snap(sample.time)
        while self._buffer and snap(self._buffer[0] + self.width) <= now:
            t = self._buffer.popleft()
            self._output = absorb(self._state, [value_at(view, Instant.of(t)) for view in views])
            logger.debug("Absorbed operand values at t=%s", t)
        if len(self._buffer) > self.k:
            raise DeltaViolationError(
                f"{len(self._buffer)} unresolved samples exceed the bound k={self.k}; input violates the minimum gap"
            )

        if self._buffer:
            buffered = [[value_at(view, Instant.of(t)) for view in views] for t in self._buffer]
            rosi = step_general(self._state, buffered)
        else:
            rosi = self._output

        oldest = Instant.of(self._buffer[0] if self._buffer else sample.time)
        for function in self._functions:
            keep = bisect_right(function, oldest, key=lambda e: e.time) - 1
            if keep > 0:
                del function[:keep]
        return StepResult(sample.time, rosi, verdict_of(rosi))


def _check_order(sample: Sample, start_time: float, last_time: float | None) -> None:
    if last_time is None:
        if sample.time != start_time:
            raise SignalError(f"First sample must be at start time {start_time}, got {sample.time}")
    elif sample.time <= last_time:
        raise SignalError(f"Sample times must be strictly increasing: {sample.time} after {last_time}")
