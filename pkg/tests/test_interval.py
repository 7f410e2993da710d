"""Tests for the extended-real interval type and its operations."""

import math
import random

from hypothesis import given
from hypothesis import strategies as st
import pytest

from rosi.interval import (
    EMPTY,
    INF,
    Interval,
    IntervalError,
    add_scalar,
    int_max,
    int_min,
    intersect,
    minkowski_sum,
    neg,
    parse_interval,
    singular,
)
from tests.generators import random_interval


def test_neg_examples():
    assert neg(Interval(1, 3)) == Interval(-3, -1)
    assert neg(Interval(0, 0)) == Interval(0, 0)
    assert neg(Interval(-INF, 5)) == Interval(-5, INF)
    assert neg(EMPTY) is EMPTY


def test_add_scalar_examples():
    assert add_scalar(2, Interval(1, 3)) == Interval(3, 5)
    assert add_scalar(0, Interval(1, 3)) == Interval(1, 3)
    assert add_scalar(-1, Interval(-INF, 0)) == Interval(-INF, -1)


def test_minkowski_sum_examples():
    assert minkowski_sum(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)
    assert minkowski_sum(Interval(0, 0), Interval(3, 4)) == Interval(3, 4)
    assert minkowski_sum(Interval(0, 1.25), Interval(2.5, 3.5)) == Interval(2.5, 4.75)
    assert minkowski_sum(EMPTY, Interval(3, 4)) is EMPTY


def test_minkowski_sum_rejects_opposite_infinities():
    with pytest.raises(IntervalError, match="Undefined sum"):
        minkowski_sum(Interval(-INF, 0), Interval(INF, INF))


def test_min_max_examples():
    assert int_min(Interval(1, 4), Interval(2, 3)) == Interval(1, 3)
    assert int_min(Interval(1, 4), Interval(1, 4)) == Interval(1, 4)
    assert int_max(Interval(-1, -1), Interval(1, 1)) == Interval(1, 1)


def test_intersect_examples():
    assert intersect(Interval(1, 3), Interval(2, 5)) == Interval(2, 3)
    assert intersect(Interval(1, 2), Interval(3, 4)).is_empty
    assert intersect(Interval(1, 2), Interval(1, 2)) == Interval(1, 2)


def test_interval_validation():
    with pytest.raises(IntervalError, match="exceeds"):
        Interval(2, 1)
    with pytest.raises(IntervalError, match="NaN"):
        Interval(math.nan, 1)
    assert EMPTY.is_empty
    assert singular(2.5).is_singular


def test_containment():
    assert Interval(-INF, INF).contains(Interval(1, 2))
    assert Interval(0, 3).contains(Interval(1, 2))
    assert not Interval(1, 2).contains(Interval(0, 3))
    assert Interval(1, 2).contains(EMPTY)


def test_render_and_parse():
    assert Interval(-INF, 2.5).render() == "[-inf, 2.5]"
    assert str(Interval(1, 1)) == "[1, 1]"
    assert EMPTY.render() == "empty"
    for i in (Interval(-INF, INF), Interval(0.1, 0.30000000000000004), EMPTY, singular(-7.0)):
        assert parse_interval(i.render()) == i


def test_parse_rejects_garbage():
    with pytest.raises(IntervalError, match="Malformed"):
        parse_interval("(1, 2)")
    with pytest.raises(IntervalError, match="Malformed"):
        parse_interval("[a, 2]")


def test_lattice_laws_on_random_triples():
    rng = random.Random(16)
    for _ in range(100_000):
        a, b, c = random_interval(rng), random_interval(rng), random_interval(rng)
        assert int_min(int_max(a, b), int_max(a, c)) == int_max(a, int_min(b, c))
        assert int_min(a, int_max(b, c)) == int_max(int_min(a, b), int_min(a, c))
        assert int_max(int_max(a, b), c) == int_max(a, int_max(b, c))
        assert int_min(int_max(a, b), a) == a


# ---- Property-based ------------------------------------------------------------------

_endpoint = st.one_of(
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
    st.sampled_from([-INF, INF]),
)


@st.composite
def intervals(draw):
    lo, hi = sorted((draw(_endpoint), draw(_endpoint)))
    return Interval(lo, hi)


@given(intervals())
def test_neg_is_an_involution(i):
    assert neg(neg(i)) == i


@given(intervals(), intervals())
def test_neg_swaps_min_and_max(a, b):
    assert neg(int_min(a, b)) == int_max(neg(a), neg(b))


@given(intervals(), intervals(), intervals())
def test_min_max_monotone_under_containment(a, b, c):
    # shrinking an argument shrinks the result
    inner = intersect(a, c)
    if inner.is_empty:
        return
    assert int_min(a, b).contains(int_min(inner, b))
    assert int_max(a, b).contains(int_max(inner, b))


@given(intervals())
def test_render_round_trip(i):
    assert parse_interval(i.render()) == i
