"""
Worklist nodes of the bounded engine, one class per operator.

Each node owns the absolute horizon [lo, hi] over which its parent needs its
robustness function. Feeding a sample returns a `NodeUpdate`: entries that
became final since the last call, the new frontier, and the provisional
entries from the frontier to the horizon end.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
import logging
from typing import Callable, Mapping, Protocol, Sequence

from rosi.engine.counters import OpCounter
from rosi.engine.sliding import SlidingFilter
from rosi.engine.timeline import Instant, NodeUpdate, WorklistEntry, clamp, value_at
from rosi.formula.analysis import UnboundedFormulaError, child_horizons
from rosi.formula.ast import UNTIMED_KINDS, Always, And, Eventually, Formula, Not, Or, Predicate, Until
from rosi.interval import Interval, int_max, int_min, neg, singular

logger = logging.getLogger(__name__)

Combine = Callable[[Interval, Interval], Interval]


class Node(Protocol):
    def update(self, time: float, values: Mapping[str, float]) -> NodeUpdate: ...


# ---- Leaves and boolean nodes --------------------------------------------------------


class PredicateNode:
    def __init__(self, predicate: Predicate, unknown: Interval, hor: Interval, counter: OpCounter):
        self._predicate = predicate
        self._unknown = unknown
        self._lo = Instant.of(hor.lo)
        self._hi = Instant.of(hor.hi)
        self._frontier = self._lo
        self._last: Interval | None = None
        self._counter = counter

    def update(self, time: float, values: Mapping[str, float]) -> NodeUpdate:
        if self._frontier > self._hi:
            return NodeUpdate([], self._frontier, [])

        now = Instant.of(time)
        frontier = clamp(now, self._lo, self._hi.right())
        final = []
        if frontier > self._frontier:
            # the previous sample holds up to this one
            final.append(WorklistEntry(self._frontier, self._last))
        self._frontier = frontier
        if frontier > self._hi:
            self._last = None
            return NodeUpdate(final, frontier, [])

        self._counter.add()
        self._last = singular(self._predicate.evaluate(values))
        if now < self._lo:
            pending = [WorklistEntry(self._lo, self._unknown)]
        else:
            pending = [WorklistEntry(now, self._last)]
            if now < self._hi:
                pending.append(WorklistEntry(now.right(), self._unknown))
        return NodeUpdate(final, frontier, pending)


class NotNode:
    def __init__(self, child: Node, counter: OpCounter):
        self._child = child
        self._counter = counter

    def update(self, time: float, values: Mapping[str, float]) -> NodeUpdate:
        u = self._child.update(time, values)
        self._counter.add(len(u.final) + len(u.pending))
        return NodeUpdate(
            [WorklistEntry(e.time, neg(e.rosi)) for e in u.final],
            u.frontier,
            [WorklistEntry(e.time, neg(e.rosi)) for e in u.pending],
        )


def merge_entries(
    combine: Combine,
    left: Sequence[WorklistEntry],
    right: Sequence[WorklistEntry],
    initial: tuple[Interval | None, Interval | None] = (None, None),
) -> list[WorklistEntry]:
    """Pointwise combination over the union of breakpoints (at most len(left) + len(right) entries)."""
    out: list[WorklistEntry] = []
    current_left, current_right = initial
    i = j = 0
    while i < len(left) or j < len(right):
        if j >= len(right) or (i < len(left) and left[i].time <= right[j].time):
            t = left[i].time
        else:
            t = right[j].time
        while i < len(left) and left[i].time == t:
            current_left = left[i].rosi
            i += 1
        while j < len(right) and right[j].time == t:
            current_right = right[j].rosi
            j += 1
        if current_left is not None and current_right is not None:
            out.append(WorklistEntry(t, combine(current_left, current_right)))
    return out


class MergeNode:
    """Conjunction (pointwise min) or disjunction (pointwise max)."""

    def __init__(self, combine: Combine, left: Node, right: Node, hor: Interval, counter: OpCounter):
        self._combine = combine
        self._children = (left, right)
        self._queues: tuple[deque[WorklistEntry], deque[WorklistEntry]] = (deque(), deque())
        self._current: list[Interval | None] = [None, None]
        self._frontier = Instant.of(hor.lo)
        self._hi = Instant.of(hor.hi)
        self._counter = counter

    def _counted(self, a: Interval, b: Interval) -> Interval:
        self._counter.add()
        return self._combine(a, b)

    def update(self, time: float, values: Mapping[str, float]) -> NodeUpdate:
        if self._frontier > self._hi:
            return NodeUpdate([], self._frontier, [])

        updates = [child.update(time, values) for child in self._children]
        for queue, u in zip(self._queues, updates):
            queue.extend(u.final)
        frontier = min(u.frontier for u in updates)

        final: list[WorklistEntry] = []
        while True:
            heads = [q[0].time for q in self._queues if q and q[0].time < frontier]
            if not heads:
                break
            t = min(heads)
            for side, queue in enumerate(self._queues):
                while queue and queue[0].time == t:
                    self._current[side] = queue.popleft().rosi
            final.append(WorklistEntry(t, self._counted(self._current[0], self._current[1])))
        self._frontier = frontier

        if frontier > self._hi:
            return NodeUpdate(final, frontier, [])
        pending = merge_entries(
            self._counted,
            [*self._queues[0], *updates[0].pending],
            [*self._queues[1], *updates[1].pending],
            (self._current[0], self._current[1]),
        )
        return NodeUpdate(final, frontier, pending)


# ---- Temporal nodes ------------------------------------------------------------------


class SlidingNode:
    """Bounded always (sliding minimum) or eventually (sliding maximum)."""

    def __init__(
        self,
        child: Node,
        window: Interval,
        *,
        maximum: bool,
        hor: Interval,
        optimize: bool,
        counter: OpCounter,
    ):
        self._child = child
        self._window = window
        self._maximum = maximum
        self._lo = Instant.of(hor.lo)
        self._hi = Instant.of(hor.hi)
        self._optimize = optimize
        self._counter = counter
        self._frontier = self._lo
        self._filter = self._new_filter(self._lo)
        self._history: list[WorklistEntry] = []

    def _new_filter(self, start: Instant) -> SlidingFilter:
        return SlidingFilter(
            self._window, maximum=self._maximum, start=start, end=self._hi, counter=self._counter
        )

    @property
    def retained(self) -> int:
        return len(self._history) if not self._optimize else self._filter.retained

    def update(self, time: float, values: Mapping[str, float]) -> NodeUpdate:
        if self._frontier > self._hi:
            return NodeUpdate([], self._frontier, [])

        u = self._child.update(time, values)
        frontier = clamp(u.frontier.shift(-self._window.hi), self._lo, self._hi.right())

        if self._optimize:
            self._filter.push(u.final)
            final = self._filter.advance(frontier)
        else:
            # rebuild the window state from the retained child entries on every step
            self._history.extend(u.final)
            self._trim_history()
            self._filter = self._new_filter(self._frontier)
            self._filter.push(self._history)
            final = self._filter.advance(frontier)

        self._frontier = frontier
        if frontier > self._hi:
            return NodeUpdate(final, frontier, [])
        return NodeUpdate(final, frontier, self._filter.preview(u.pending))

    def _trim_history(self) -> None:
        # entries that left every window from the committed frontier on
        keep = bisect_right(self._history, self._frontier.shift(self._window.lo), key=lambda e: e.time) - 1
        if keep > 0:
            del self._history[:keep]


class UntilNode:
    """
    Bounded until, evaluated directly at every candidate change point.

    The value at tau is the supremum over tau2 in tau + [a, b] of
    min(right(tau2), inf of left over (tau, tau2)); the empty infimum at
    tau2 == tau is +inf.
    """

    def __init__(self, left: Node, right: Node, window: Interval, hor: Interval, counter: OpCounter):
        self._left = left
        self._right = right
        self._a = window.lo
        self._b = window.hi
        self._lo = Instant.of(hor.lo)
        self._hi = Instant.of(hor.hi)
        self._frontier = self._lo
        self._phi: list[WorklistEntry] = []
        self._psi: list[WorklistEntry] = []
        self._counter = counter

    def update(self, time: float, values: Mapping[str, float]) -> NodeUpdate:
        if self._frontier > self._hi:
            return NodeUpdate([], self._frontier, [])

        ul = self._left.update(time, values)
        ur = self._right.update(time, values)
        self._phi.extend(ul.final)
        self._psi.extend(ur.final)
        phi = self._phi + ul.pending
        psi = self._psi + ur.pending

        frontier = clamp(min(ul.frontier, ur.frontier).shift(-self._b), self._lo, self._hi.right())
        final: list[WorklistEntry] = []
        pending: list[WorklistEntry] = []
        for tau in self._candidates(phi, psi, frontier):
            entry = WorklistEntry(tau, self._value(tau, phi, psi))
            (final if tau < frontier else pending).append(entry)

        self._frontier = frontier
        self._trim(frontier)
        return NodeUpdate(final, frontier, pending)

    def _candidates(
        self, phi: list[WorklistEntry], psi: list[WorklistEntry], frontier: Instant
    ) -> list[Instant]:
        points = {self._frontier, frontier}
        for e in psi:
            points.add(e.time.shift(-self._a))
            points.add(e.time.shift(-self._b))
        for e in phi:
            edge = e.time.right()
            points.add(edge.shift(-self._a))
            points.add(edge.shift(-self._b))
            points.add(Instant(e.time.at))
        return sorted(p for p in points if self._frontier <= p <= self._hi)

    def _value(self, tau: Instant, phi: list[WorklistEntry], psi: list[WorklistEntry]) -> Interval:
        first, last = tau.shift(self._a), tau.shift(self._b)
        targets = {first}
        targets.update(e.time for e in psi if first < e.time <= last)
        targets.update(e.time.right() for e in phi if first < e.time.right() <= last)

        start = tau.right()
        best: Interval | None = None
        for target in sorted(targets):
            value = value_at(psi, target)
            if target != tau:
                inner = value_at(phi, start)
                for e in phi:
                    if start < e.time and (e.time < target or (target.after and e.time == target)):
                        self._counter.add()
                        inner = int_min(inner, e.rosi)
                self._counter.add()
                value = int_min(value, inner)
            if best is None:
                best = value
            else:
                self._counter.add()
                best = int_max(best, value)
        return best

    def _trim(self, frontier: Instant) -> None:
        keep_phi = bisect_right(self._phi, frontier, key=lambda e: e.time) - 1
        if keep_phi > 0:
            del self._phi[:keep_phi]
        keep_psi = bisect_right(self._psi, frontier.shift(self._a), key=lambda e: e.time) - 1
        if keep_psi > 0:
            del self._psi[:keep_psi]


# ---- Construction --------------------------------------------------------------------


def build_node(
    f: Formula,
    hor: Interval,
    bounds: Mapping[str, Interval],
    counter: OpCounter,
    optimize: bool = True,
) -> Node:
    """Build the worklist node tree for `f` whose robustness is needed over absolute horizon `hor`."""
    if f.kind in UNTIMED_KINDS:
        raise UnboundedFormulaError(f"Untimed operator {f.kind.value} inside a bounded monitor")
    children = [
        build_node(child, child_hor, bounds, counter, optimize)
        for child, child_hor in zip(f.children(), child_horizons(f, hor))
    ]

    match f:
        case Predicate():
            return PredicateNode(f, f.bound(bounds), hor, counter)
        case Not():
            return NotNode(children[0], counter)
        case And():
            return MergeNode(int_min, children[0], children[1], hor, counter)
        case Or():
            return MergeNode(int_max, children[0], children[1], hor, counter)
        case Always(window=window) if window is not None:
            return SlidingNode(children[0], window, maximum=False, hor=hor, optimize=optimize, counter=counter)
        case Eventually(window=window) if window is not None:
            return SlidingNode(children[0], window, maximum=True, hor=hor, optimize=optimize, counter=counter)
        case Until(window=window) if window is not None:
            return UntilNode(children[0], children[1], window, hor, counter)
    raise TypeError(f"Not a formula node: {f!r}")
