"""Tests for horizons, last, untimed-class recognition and buffer sizing."""

import math
import random

import pytest

from rosi.formula.analysis import (
    UnboundedFormulaError,
    UntimedClass,
    compute_horizons,
    compute_k,
    compute_last,
    untimed_class,
    window_width,
)
from rosi.formula.parser import parse
from rosi.interval import Interval
from tests.generators import random_formula


def test_golden_horizons(golden_formula):
    hor = compute_horizons(golden_formula)
    assert hor.of(()) == Interval(0, 0)
    assert hor.of((0,)) == Interval(0, 1.25)
    assert hor.of((0, 0)) == Interval(0, 1.25)
    assert hor.of((0, 0, 0)) == Interval(0, 1.25)
    assert hor.of((0, 1)) == Interval(0, 1.25)
    assert hor.of((0, 1, 0)) == Interval(2.5, 4.75)


def test_predicate_horizon():
    assert compute_horizons(parse("x > 0")).of(()) == Interval(0, 0)


def test_nested_horizon():
    hor = compute_horizons(parse("G[0,2] F[1,3] (x > 0)"))
    assert hor.of((0, 0)) == Interval(1, 5)


def test_until_horizons():
    hor = compute_horizons(parse("(x > 0) U[1, 2] (y > 0)"))
    assert hor.of((0,)) == Interval(0, 2)
    assert hor.of((1,)) == Interval(1, 2)


def test_horizons_require_bounded_formula():
    with pytest.raises(UnboundedFormulaError):
        compute_horizons(parse("G (x > 0)"))


def test_compute_last(golden_formula):
    assert compute_last(golden_formula) == 4.75
    assert compute_last(parse("G (x > 0)")) == math.inf
    assert compute_last(parse("x > 0")) == 0


def test_last_is_max_horizon_end():
    rng = random.Random(3)
    for _ in range(200):
        f = random_formula(rng, 4)
        assert compute_last(f) == max(h.hi for _, h in compute_horizons(f).items())


def test_horizons_contain_shifted_parent():
    rng = random.Random(4)
    for _ in range(200):
        f = random_formula(rng, 4)
        hor = compute_horizons(f)
        for path, h in hor.items():
            if path:
                parent = hor.of(path[:-1])
                assert h.lo >= parent.lo and h.hi >= parent.hi


@pytest.mark.parametrize(
    ("text", "kind", "phi", "psi"),
    [
        ("G (x > 0)", UntimedClass.G, "x > 0", None),
        ("F (x > 0)", UntimedClass.F, "x > 0", None),
        ("(x > 0) U (y > 0)", UntimedClass.U, "x > 0", "y > 0"),
        ("G F (x > 0)", UntimedClass.GF, "x > 0", None),
        ("F G (x > 0)", UntimedClass.FG, "x > 0", None),
        ("G (F (x > 0) or y > 0)", UntimedClass.G_OR_F, "y > 0", "x > 0"),
        ("F (x > 0 and G (y > 0))", UntimedClass.F_AND_G, "x > 0", "y > 0"),
        ("F (x > 0 and F (y > 0))", UntimedClass.F_AND_F, "x > 0", "y > 0"),
        ("G (G (y > 0) or x > 0)", UntimedClass.G_OR_G, "x > 0", "y > 0"),
        ("G (F[0, 2] (x > 0) or y > 0)", UntimedClass.G, "F[0, 2] (x > 0) or y > 0", None),
    ],
)
def test_untimed_class(text, kind, phi, psi):
    match = untimed_class(parse(text))
    assert match.kind is kind
    assert match.phi == parse(phi)
    assert match.psi == (parse(psi) if psi else None)


@pytest.mark.parametrize("text", ["x > 0", "G[0, 1] (x > 0)", "G (x > 0) and F (y > 0)", "G (F (G (x > 0)))"])
def test_unsupported_formulas(text):
    assert untimed_class(parse(text)).kind is UntimedClass.UNSUPPORTED


def test_compute_k():
    f = parse("G (F[0, 10] (x > 0))")
    assert window_width(f) == 10
    assert compute_k(f, 0.5) == 20
    assert compute_k(f, 3) == 4
    assert compute_k(parse("(x > 0) U (y > 0)"), 1.0) == 0


def test_compute_k_rejects_bad_delta():
    with pytest.raises(ValueError, match="positive"):
        compute_k(parse("G (x > 0)"), 0)


def test_window_width_rejects_unsupported():
    with pytest.raises(UnboundedFormulaError):
        window_width(parse("G (x > 0) and F (y > 0)"))
