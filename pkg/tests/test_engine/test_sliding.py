"""Tests for the variable-step sliding extremum filter."""

from functools import reduce
import random

from rosi.engine.counters import OpCounter
from rosi.engine.nodes import PredicateNode, SlidingNode
from rosi.engine.sliding import SlidingFilter, sliding_max, sliding_min
from rosi.engine.timeline import Instant, WorklistEntry, value_at
from rosi.formula.parser import parse
from rosi.interval import Interval, int_max, int_min, singular
from tests.generators import random_interval


def _entries(pairs):
    return [WorklistEntry(Instant(t), v if isinstance(v, Interval) else singular(v)) for t, v in pairs]


def _brute(entries, window, tau, combine):
    """Extremum over the entries whose segment meets the closed window tau + [a, b]."""
    first, last = tau + window.lo, tau + window.hi
    hit = []
    for k, e in enumerate(entries):
        start = e.time.at
        end = entries[k + 1].time.at if k + 1 < len(entries) else None
        if end is None:
            if first <= start <= last:
                hit.append(e.rosi)
        elif start <= last and end > first:
            hit.append(e.rosi)
    return reduce(combine, hit)


def test_sliding_max_example():
    out = sliding_max(_entries([(0, 1), (1, 3), (2, 2)]), Interval(0, 1))
    assert [value_at(out, Instant(t)) for t in (0, 1, 2)] == [singular(3), singular(3), singular(2)]


def test_sliding_min_example():
    out = sliding_min(_entries([(0, 1), (1, 3), (2, 2)]), Interval(0, 1))
    assert [value_at(out, Instant(t)) for t in (0, 1, 2)] == [singular(1), singular(2), singular(2)]


def test_degenerate_window_is_identity():
    entries = _entries([(0, 4), (0.5, -1), (2, 7)])
    for filt in (sliding_max, sliding_min):
        out = filt(entries, Interval(0, 0))
        assert [value_at(out, e.time) for e in entries] == [e.rosi for e in entries]


def test_interval_valued_input():
    out = sliding_max(_entries([(0, Interval(-1, 5)), (1, Interval(2, 3))]), Interval(0, 1))
    assert value_at(out, Instant(0)) == Interval(2, 5)


def test_constant_input():
    out = sliding_min(_entries([(t, 2) for t in range(6)]), Interval(1, 2))
    assert {e.rosi for e in out} == {singular(2)}


def test_empty_input():
    assert sliding_max([], Interval(0, 1)) == []


def test_ties_keep_the_newest_element():
    counter = OpCounter()
    filt = SlidingFilter(Interval(0, 10), maximum=True, start=Instant(0), end=Instant(0), counter=counter)
    filt.push(_entries([(0, 1), (1, 1), (2, 1)]))
    assert filt.preview(()) == [WorklistEntry(Instant(0), singular(1))]
    assert counter.count == 4


def test_matches_brute_force_on_random_sequences():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 60)
        t = 0.0
        pairs = []
        for _ in range(n):
            pairs.append((t, random_interval(rng, infinite=0.05)))
            t += rng.choice((0.25, 0.5, 1.0, 1.5))
        entries = _entries(pairs)
        lo = rng.choice((0.0, 0.25, 0.5, 1.0, 2.0))
        window = Interval(lo, lo + rng.choice((0.0, 0.5, 1.0, 2.5, 4.0)))

        end = entries[-1].time.at - window.lo
        taus = sorted({e.time.at - d for e in entries for d in (0, window.lo, window.hi)} | {0.0})
        taus += [(a + b) / 2 for a, b in zip(taus, taus[1:])]
        for filt, combine in ((sliding_max, int_max), (sliding_min, int_min)):
            out = filt(entries, window)
            for tau in taus:
                if 0.0 <= tau <= end:
                    assert value_at(out, Instant(tau)) == _brute(entries, window, tau, combine)


def test_streaming_matches_offline():
    rng = random.Random(12)
    for _ in range(200):
        entries = _entries([(0.5 * k, float(rng.randint(-5, 5))) for k in range(rng.randint(2, 40))])
        window = Interval(0.5, 1.5)
        end = entries[-1].time.shift(-window.lo)

        streaming = SlidingFilter(window, maximum=True, start=Instant(0), end=end)
        committed = []
        for e in entries:
            streaming.push([e])
            committed += streaming.advance(e.time.shift(-window.hi))
        committed += streaming.preview(())
        assert committed == sliding_max(entries, window)


def test_first_entry_entering_after_start_fills_the_start_instant():
    filt = SlidingFilter(Interval(0, 0), maximum=True, start=Instant(0.0), end=Instant(1.0))
    filt.push(_entries([(0.1, 3), (0.5, 1)]))
    out = filt.preview(())
    assert out[0] == WorklistEntry(Instant(0.0), singular(3))
    assert value_at(out, Instant(0.5)) == singular(1)


def test_shifted_instants_stay_on_the_time_grid():
    t = Instant.of(0.1).shift(0.2)
    assert t == Instant(0.3)
    assert t.shift(-0.2) == Instant(0.1)


def test_recompute_mode_keeps_only_the_live_window():
    pred = parse("x > 0")
    nodes = {}
    for optimize in (True, False):
        counter = OpCounter()
        child = PredicateNode(pred, Interval(-10, 10), Interval(0, 1001), counter)
        nodes[optimize] = SlidingNode(
            child, Interval(0, 1), maximum=True, hor=Interval(0, 1000), optimize=optimize, counter=counter
        )

    rng = random.Random(11)
    final = {True: [], False: []}
    for k in range(400):
        values = {"x": rng.uniform(-5, 5)}
        for optimize, node in nodes.items():
            final[optimize].extend(node.update(k * 0.5, values).final)
        assert nodes[False].retained <= 4

    for k in range(4 * 198):
        tau = Instant(k * 0.25)
        assert value_at(final[False], tau) == value_at(final[True], tau)
