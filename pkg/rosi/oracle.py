"""
Reference evaluations for differential testing.

`offline_rosi` evaluates the recursive RoSI definition directly at any
evaluation point, enumerating the finite set of breakpoints of every
piecewise-constant subformula. `brute_untimed` expands the defining min/max
expressions of the untimed classes literally. Nothing here is incremental.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import reduce

from rosi.engine.counters import OpCounter
from rosi.engine.timeline import Instant, snap
from rosi.formula.analysis import UnboundedFormulaError, UntimedClass
from rosi.formula.ast import Always, And, Eventually, Formula, Not, Or, Predicate, Until, is_bounded
from rosi.interval import INF, Interval, int_max, int_min, neg, singular
from rosi.signal import PartialSignal, SignalError


@dataclass(frozen=True)
class OracleResult:
    rosi: Interval
    evaluations: int


class _Evaluator:
    def __init__(self, sig: PartialSignal, counter: OpCounter):
        self._sig = sig
        self._samples = sig.samples
        self._times = [snap(t) for t in sig.times]
        self._newest = Instant(self._times[-1])
        self._counter = counter
        self._values: dict[tuple[int, Instant], Interval] = {}
        self._breakpoints: dict[int, list[Instant]] = {}

    # ---- Values ----------------------------------------------------------------------

    def value(self, f: Formula, tau: Instant) -> Interval:
        key = (id(f), tau)
        if key not in self._values:
            self._values[key] = self._compute(f, tau)
        return self._values[key]

    def _compute(self, f: Formula, tau: Instant) -> Interval:
        count = self._counter.add
        match f:
            case Predicate():
                if tau <= self._newest:
                    count()
                    sample = self._samples[bisect_right(self._times, tau.at) - 1]
                    return singular(f.evaluate(sample.values))
                return f.bound(self._sig.bounds)
            case Not(child=child):
                count()
                return neg(self.value(child, tau))
            case And(left=left, right=right):
                count()
                return int_min(self.value(left, tau), self.value(right, tau))
            case Or(left=left, right=right):
                count()
                return int_max(self.value(left, tau), self.value(right, tau))
            case Always(child=child, window=window):
                points = self._window_points(child, tau, window)
                count(len(points))
                return reduce(int_min, (self.value(child, t) for t in points))
            case Eventually(child=child, window=window):
                points = self._window_points(child, tau, window)
                count(len(points))
                return reduce(int_max, (self.value(child, t) for t in points))
            case Until():
                return self._until(f, tau)
        raise TypeError(f"Not a formula node: {f!r}")

    def _window_points(self, child: Formula, tau: Instant, window: Interval) -> list[Instant]:
        first, last = tau.shift(window.lo), tau.shift(window.hi)
        bps = self.breakpoints(child)
        return [first] + bps[bisect_right(bps, first) : bisect_right(bps, last)]

    def _until(self, f: Until, tau: Instant) -> Interval:
        first, last = tau.shift(f.window.lo), tau.shift(f.window.hi)
        left_bps = self.breakpoints(f.left)
        candidates = set(self.breakpoints(f.right)) | {w.right() for w in left_bps}
        targets = sorted({first} | {t for t in candidates if first < t <= last})

        start = tau.right()
        best = Interval(-INF, -INF)
        for target in targets:
            value = self.value(f.right, target)
            if target != tau:
                inner = self.value(f.left, start)
                upper = bisect_right(left_bps, target) if target.after else bisect_left(left_bps, target)
                for w in left_bps[bisect_right(left_bps, start) : upper]:
                    self._counter.add()
                    inner = int_min(inner, self.value(f.left, w))
                value = int_min(value, inner)
            self._counter.add(2)
            best = int_max(best, value)
        return best

    # ---- Breakpoints -----------------------------------------------------------------

    def breakpoints(self, f: Formula) -> list[Instant]:
        """Sorted superset of the instants where the robustness of `f` may change."""
        key = id(f)
        if key not in self._breakpoints:
            self._breakpoints[key] = sorted(self._compute_breakpoints(f))
        return self._breakpoints[key]

    def _compute_breakpoints(self, f: Formula) -> set[Instant]:
        match f:
            case Predicate():
                return {Instant(t) for t in self._times} | {self._newest.right()}
            case Not(child=child):
                return set(self.breakpoints(child))
            case And(left=left, right=right) | Or(left=left, right=right):
                return set(self.breakpoints(left)) | set(self.breakpoints(right))
            case Always(child=child, window=window) | Eventually(child=child, window=window):
                return _shifted(self.breakpoints(child), window)
            case Until(left=left, right=right, window=window):
                left_bps = self.breakpoints(left)
                edges = set(self.breakpoints(right)) | {w.right() for w in left_bps}
                return _shifted(edges, window) | {Instant(w.at) for w in left_bps}
        raise TypeError(f"Not a formula node: {f!r}")


def _shifted(points, window: Interval) -> set[Instant]:
    out: set[Instant] = set()
    for p in points:
        out.add(p.shift(-window.lo))
        out.add(p.shift(-window.hi))
    return out


# ---- Public API ----------------------------------------------------------------------


def evaluate(f: Formula, sig: PartialSignal, tau: float | None = None) -> OracleResult:
    if not is_bounded(f):
        raise UnboundedFormulaError("The offline evaluator handles bounded formulas only")
    if not len(sig):
        raise ValueError("Cannot evaluate over an empty signal")
    counter = OpCounter()
    point = Instant.of(sig.start_time if tau is None else tau)
    if point.at < snap(sig.start_time):
        raise SignalError(f"Time {point.at} precedes signal start {sig.start_time}")
    rosi = _Evaluator(sig, counter).value(f, point)
    return OracleResult(rosi, counter.count)


def offline_rosi(f: Formula, sig: PartialSignal, tau: float | None = None) -> Interval:
    """RoSI of `f` over the partial signal at `tau` (defaults to the start time)."""
    return evaluate(f, sig, tau).rosi


def naive_online(f: Formula, sig: PartialSignal) -> list[OracleResult]:
    """Recompute the offline RoSI from scratch after every sample."""
    return [evaluate(f, sig.prefix(n)) for n in range(1, len(sig) + 1)]


# ---- Untimed classes -----------------------------------------------------------------


def _min(values) -> Interval:
    return reduce(int_min, values)


def _max(values) -> Interval:
    return reduce(int_max, values)


def brute_untimed(
    kind: UntimedClass, p: list[Interval], q: list[Interval] | None = None
) -> Interval:
    """Literal evaluation of the class expression over sample-time operand values."""
    n = len(p)
    match kind:
        case UntimedClass.G:
            return _min(p)
        case UntimedClass.F:
            return _max(p)
        case UntimedClass.U:
            return _max(int_min(q[i], _min(p[: i + 1])) for i in range(n))
        case UntimedClass.G_OR_F:
            return _min(int_max(p[i], _max(q[i:])) for i in range(n))
        case UntimedClass.F_AND_G:
            return _max(int_min(p[i], _min(q[i:])) for i in range(n))
        case UntimedClass.GF:
            return _min(_max(p[i:]) for i in range(n))
        case UntimedClass.FG:
            return _max(_min(p[i:]) for i in range(n))
        case UntimedClass.F_AND_F:
            return _max(int_min(p[i], _max(q[i:])) for i in range(n))
        case UntimedClass.G_OR_G:
            return _min(int_max(p[i], _min(q[i:])) for i in range(n))
    raise ValueError(f"No expansion for untimed class {kind.value}")
