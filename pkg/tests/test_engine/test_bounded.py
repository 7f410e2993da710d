"""Tests for the bounded-horizon online monitor."""

import math
import random

import pytest

from rosi.engine.bounded import BoundedMonitor
from rosi.engine.nodes import merge_entries
from rosi.engine.timeline import Instant, WorklistEntry
from rosi.engine.verdict import Verdict, verdict_of
from rosi.formula.analysis import UnboundedFormulaError
from rosi.formula.ast import render
from rosi.formula.parser import parse
from rosi.interval import INF, Interval, int_min, neg, singular
from rosi.oracle import offline_rosi
from rosi.signal import Sample, SignalError, signal_from_rows
from tests.generators import random_formula, random_signal


def _run(formula, sig, **kwargs):
    monitor = BoundedMonitor(formula, sig.bounds, start_time=sig.start_time, **kwargs)
    return [monitor.step(sample) for sample in sig.samples]


# ---- Worked example ------------------------------------------------------------------


def test_golden_root_sequence(golden_formula, golden_signal):
    results = _run(golden_formula, golden_signal)
    assert [r.rosi for r in results[2:]] == [
        Interval(-2, INF),
        Interval(-2, INF),
        Interval(-2, -2),
        Interval(-2, -2),
    ]
    assert [r.verdict for r in results] == [Verdict.UNKNOWN] * 4 + [Verdict.FALSIFIED] * 2


def test_golden_stops_one_sample_early(golden_formula, golden_signal):
    monitor = BoundedMonitor(golden_formula)
    for sample in golden_signal.samples:
        monitor.step(sample)
        if monitor.decided:
            break
    assert monitor.steps == 5
    assert monitor.result.time == 4.6


def test_golden_eventually_node(golden_signal):
    # the eventually subformula evaluated at the start time after the fourth sample
    results = _run(parse("F[2.5, 3.5] (x > 0)"), golden_signal.prefix(4))
    assert results[-1].rosi == Interval(-1, INF)


def test_golden_matches_offline(golden_formula, golden_signal):
    for n, result in enumerate(_run(golden_formula, golden_signal), start=1):
        assert result.rosi == offline_rosi(golden_formula, golden_signal.prefix(n))


# ---- Verdicts ------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("rosi", "verdict"),
    [
        (Interval(-2, -2), Verdict.FALSIFIED),
        (Interval(0.5, 3), Verdict.SATISFIED),
        (Interval(-1, 2), Verdict.UNKNOWN),
        (Interval(0, 0), Verdict.SATISFIED),
        (Interval(-1, 0), Verdict.UNKNOWN),
    ],
)
def test_verdict_of(rosi, verdict):
    assert verdict_of(rosi) is verdict


def test_verdict_dual_under_negation():
    rng = random.Random(5)
    for _ in range(1000):
        lo, hi = sorted(float(rng.choice((-3, -1, 1, 2))) for _ in range(2))
        rosi = Interval(lo, hi)
        flipped = verdict_of(neg(rosi))
        if verdict_of(rosi) is Verdict.FALSIFIED:
            assert flipped is Verdict.SATISFIED
        if verdict_of(rosi) is Verdict.SATISFIED:
            assert flipped is Verdict.FALSIFIED


# ---- Small cases ---------------------------------------------------------------------


def test_satisfied_with_singular_rosi():
    sig = signal_from_rows([(0.0, {"x": 1.0}), (0.5, {"x": 2.0}), (1.0, {"x": 1.5}), (1.5, {"x": 3.0})])
    results = _run(parse("G[0, 1] (x > 0)"), sig)
    assert results[2].rosi == singular(1.0)
    assert results[2].verdict is Verdict.SATISFIED


def test_unknown_future_uses_bounds():
    sig = signal_from_rows([(0.0, {"x": 1.0})], bounds={"x": Interval(-5, 5)})
    assert _run(parse("G[0, 1] (x > 0)"), sig)[0].rosi == Interval(-5, 1)


def test_until_at_evaluation_point_uses_right_operand_only():
    sig = signal_from_rows([(0.0, {"x": -5.0, "y": 2.0})])
    f = parse("(x > 0) U[0, 0] (y > 0)")
    assert _run(f, sig)[0].rosi == singular(2.0)
    assert offline_rosi(f, sig) == singular(2.0)


def test_frozen_after_decision(golden_formula, golden_signal):
    monitor = BoundedMonitor(golden_formula)
    results = [monitor.step(s) for s in golden_signal.samples]
    assert results[5] is results[4]
    assert monitor.steps == 5


def test_rejects_untimed_formula():
    with pytest.raises(UnboundedFormulaError):
        BoundedMonitor(parse("G (x > 0)"))


def test_rejects_bad_samples():
    monitor = BoundedMonitor(parse("F[0, 1] (x > 0)"))
    with pytest.raises(SignalError, match="start time"):
        monitor.step(Sample(1.0, {"x": -1.0}))
    monitor.step(Sample(0.0, {"x": -1.0}))
    assert not monitor.decided
    with pytest.raises(SignalError, match="strictly increasing"):
        monitor.step(Sample(0.0, {"x": -1.0}))
    with pytest.raises(SignalError, match="missing variables: x"):
        monitor.step(Sample(1.0, {"y": 0.0}))


def test_merge_size_bound():
    rng = random.Random(9)
    for _ in range(200):
        left = [WorklistEntry(Instant(t), singular(rng.random())) for t in sorted(rng.sample(range(20), 6))]
        right = [WorklistEntry(Instant(t), singular(rng.random())) for t in sorted(rng.sample(range(20), 5))]
        merged = merge_entries(int_min, left, right)
        assert len(merged) <= len(left) + len(right)
        times = [e.time for e in merged]
        assert times == sorted(set(times))
        assert set(times) <= {e.time for e in left + right}


# ---- Randomized equivalence ----------------------------------------------------------


def _random_cases(seed, count, depth, length):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_formula(rng, depth), random_signal(rng, rng.randint(1, length))


def test_matches_offline_on_random_cases():
    for f, sig in _random_cases(seed=1, count=1000, depth=3, length=10):
        results = _run(f, sig, freeze_decided=False)
        for n, result in enumerate(results, start=1):
            assert result.rosi == offline_rosi(f, sig.prefix(n)), (f, n)



def _close(a, b):
    return all(math.isclose(x, y, rel_tol=0.0, abs_tol=1e-9) for x, y in ((a.lo, b.lo), (a.hi, b.hi)))


def test_matches_offline_with_decimal_windows_and_long_traces():
    rng = random.Random(5)
    for _ in range(1000):
        f = random_formula(rng, 4, decimal=True)
        sig = random_signal(rng, rng.randint(1, 50), decimal=True)
        results = _run(f, sig, freeze_decided=False)
        for n in sorted({len(results), *range(1, len(results) + 1, 7)}):
            assert _close(results[n - 1].rosi, offline_rosi(f, sig.prefix(n))), (render(f), n)


def test_decimal_windows_line_up_with_sample_times():
    f = parse("G[0.1, 0.3] (F[0.2, 0.2] (x > 0))")
    rows = [(0.0, 2.0), (0.1, 2.0), (0.3, 2.0), (0.4, 1.0), (0.5, 2.0)]
    sig = signal_from_rows([(t, {"x": x}) for t, x in rows], bounds={"x": Interval(-5, 5)})
    results = _run(f, sig, freeze_decided=False)
    for n, result in enumerate(results, start=1):
        assert result.rosi == offline_rosi(f, sig.prefix(n))
    assert results[-1].rosi == singular(1.0)
    assert results[-1].verdict is Verdict.SATISFIED


def test_sliding_optimization_does_not_change_results():
    for f, sig in _random_cases(seed=2, count=300, depth=4, length=12):
        fast = _run(f, sig, freeze_decided=False)
        slow = _run(f, sig, freeze_decided=False, sliding_optimization=False)
        assert [r.rosi for r in fast] == [r.rosi for r in slow]


def test_rosi_refines_as_samples_arrive():
    for f, sig in _random_cases(seed=3, count=500, depth=4, length=12):
        results = _run(f, sig, freeze_decided=False)
        for before, after in zip(results, results[1:]):
            assert before.rosi.contains(after.rosi)
            if before.rosi.is_singular:
                assert after.rosi == before.rosi


def test_verdict_is_absorbing():
    for f, sig in _random_cases(seed=4, count=300, depth=3, length=12):
        results = _run(f, sig, freeze_decided=False)
        verdicts = [r.verdict for r in results]
        for i, verdict in enumerate(verdicts):
            if verdict is not Verdict.UNKNOWN:
                assert set(verdicts[i:]) == {verdict}
