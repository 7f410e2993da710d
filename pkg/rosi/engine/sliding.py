"""
Variable-step sliding extremum over interval-valued piecewise-constant input.

Output at time tau is the extremum of the input over [tau + a, tau + b]. The
filter keeps separate monotonic edges for lower and upper endpoints (deques of
entry indices whose values decrease, or increase for the minimum, from front to
back). Input entries enter the window at `time - b` and leave it at
`next_time - a`; the output is emitted at the start instant and at every event
time.

The filter is streaming: `advance` commits everything strictly below a limit
and never revisits it, `preview` runs a throw-away copy over still-pending
input to produce provisional output.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from rosi.engine.counters import OpCounter
from rosi.engine.timeline import Instant, WorklistEntry
from rosi.interval import Interval

# Compact retained input once this many entries have left the window.
_COMPACT_AFTER = 64


@dataclass
class _EdgeState:
    entered: int = 0
    left: int = 0
    lo_edge: deque[int] = field(default_factory=deque)
    hi_edge: deque[int] = field(default_factory=deque)
    started: bool = False

    def copy(self) -> _EdgeState:
        return _EdgeState(self.entered, self.left, deque(self.lo_edge), deque(self.hi_edge), self.started)


class SlidingFilter:
    def __init__(
        self,
        window: Interval,
        *,
        maximum: bool,
        start: Instant,
        end: Instant,
        counter: OpCounter | None = None,
    ):
        self._a = window.lo
        self._b = window.hi
        self._maximum = maximum
        self._start = start
        self._end = end
        self._counter = counter or OpCounter()
        self._entries: list[WorklistEntry] = []
        self._base = 0
        self._state = _EdgeState()

    @property
    def retained(self) -> int:
        return len(self._entries)

    def push(self, entries: Sequence[WorklistEntry]) -> None:
        self._entries.extend(entries)

    def advance(self, limit: Instant) -> list[WorklistEntry]:
        """Commit all output strictly before `limit`."""
        out = self._run(self._state, (), limit, inclusive=False)
        gone = self._state.left - self._base
        if gone > _COMPACT_AFTER:
            del self._entries[:gone]
            self._base = self._state.left
        return out

    def preview(self, pending: Sequence[WorklistEntry]) -> list[WorklistEntry]:
        """Provisional output from the committed state onwards, treating `pending` as input."""
        return self._run(self._state.copy(), pending, self._end, inclusive=True)

    # ---- Event loop ------------------------------------------------------------------

    def _run(
        self,
        state: _EdgeState,
        extra: Sequence[WorklistEntry],
        limit: Instant,
        *,
        inclusive: bool,
    ) -> list[WorklistEntry]:
        entries, base = self._entries, self._base
        stored = base + len(entries)
        total = stored + len(extra)

        def entry(k: int) -> WorklistEntry:
            return entries[k - base] if k < stored else extra[k - stored]

        def within(t: Instant) -> bool:
            return t <= limit if inclusive else t < limit

        out: list[WorklistEntry] = []
        while True:
            t = None
            if state.entered < total:
                t = entry(state.entered).time.shift(-self._b)
            if state.left + 1 < total:
                leave = entry(state.left + 1).time.shift(-self._a)
                if t is None or leave < t:
                    t = leave

            if not state.started and (t is None or t > self._start):
                if not within(self._start):
                    break
                if state.lo_edge:
                    out.append(self._emit(state, entry, self._start))
                    state.started = True
                elif t is None:
                    break

            if t is None or not within(t):
                break

            while state.entered < total and entry(state.entered).time.shift(-self._b) == t:
                self._enter(state, entry, state.entered)
                state.entered += 1
            while state.left + 1 < total and entry(state.left + 1).time.shift(-self._a) == t:
                if state.lo_edge and state.lo_edge[0] == state.left:
                    state.lo_edge.popleft()
                if state.hi_edge and state.hi_edge[0] == state.left:
                    state.hi_edge.popleft()
                state.left += 1

            if state.lo_edge and t >= self._start and (t <= self._end or not state.started):
                # an empty window at the start instant takes the first entered value
                out.append(self._emit(state, entry, t if state.started else self._start))
                state.started = True
        return out

    def _enter(self, state: _EdgeState, entry: Callable[[int], WorklistEntry], k: int) -> None:
        value = entry(k).rosi
        lo_edge, hi_edge = state.lo_edge, state.hi_edge
        while lo_edge:
            self._counter.add()
            if not self._dominates(value.lo, entry(lo_edge[-1]).rosi.lo):
                break
            lo_edge.pop()
        lo_edge.append(k)
        while hi_edge:
            self._counter.add()
            if not self._dominates(value.hi, entry(hi_edge[-1]).rosi.hi):
                break
            hi_edge.pop()
        hi_edge.append(k)

    def _dominates(self, new: float, old: float) -> bool:
        # ties pop the older element so the newest extremum is kept
        return new >= old if self._maximum else new <= old

    @staticmethod
    def _emit(state: _EdgeState, entry: Callable[[int], WorklistEntry], t: Instant) -> WorklistEntry:
        return WorklistEntry(t, Interval(entry(state.lo_edge[0]).rosi.lo, entry(state.hi_edge[0]).rosi.hi))


# ---- Offline use ---------------------------------------------------------------------


def _sliding(entries: Sequence[WorklistEntry], window: Interval, maximum: bool) -> list[WorklistEntry]:
    if not entries:
        return []
    start = entries[0].time
    end = entries[-1].time.shift(-window.lo)
    if end < start:
        return []
    sliding = SlidingFilter(window, maximum=maximum, start=start, end=end)
    sliding.push(entries)
    return sliding.preview(())


def sliding_max(entries: Sequence[WorklistEntry], window: Interval) -> list[WorklistEntry]:
    """
    Sliding maximum of a complete input that ends at its last entry's time.

    The output covers every tau whose window start still lies inside the input.
    """

    return _sliding(entries, window, maximum=True)


def sliding_min(entries: Sequence[WorklistEntry], window: Interval) -> list[WorklistEntry]:
    return _sliding(entries, window, maximum=False)
