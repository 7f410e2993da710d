"""
Pytest fixtures for the test suite.

The golden trace follows the worked example of the bounded engine: formula
`G[0, 1.25] (not (y > 0) or F[2.5, 3.5] (x > 0))` over six samples whose times
place the window edges between consecutive samples.
"""
from __future__ import annotations

import pytest

from rosi.formula.parser import parse
from rosi.signal import signal_from_rows

GOLDEN_FORMULA = "G[0, 1.25] (not (y > 0) or F[2.5, 3.5] (x > 0))"

GOLDEN_ROWS = [
    (0.0, {"x": 0.0, "y": -1.0}),
    (1.0, {"x": 1.0, "y": 2.0}),
    (2.0, {"x": -1.0, "y": 2.0}),
    (3.25, {"x": -2.0, "y": 1.0}),
    (4.6, {"x": 2.0, "y": 2.0}),
    (5.0, {"x": 2.0, "y": 2.0}),
]

GOLDEN_CSV = "time,x,y\n" + "".join(f"{t},{v['x']},{v['y']}\n" for t, v in GOLDEN_ROWS)


@pytest.fixture
def golden_formula():
    return parse(GOLDEN_FORMULA)


@pytest.fixture
def golden_signal():
    return signal_from_rows(GOLDEN_ROWS)


@pytest.fixture
def golden_csv(tmp_path):
    """The golden trace written as CSV; returns the file path."""
    path = tmp_path / "golden.csv"
    path.write_text(GOLDEN_CSV, encoding="utf-8")
    return path
