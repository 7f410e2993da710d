"""Online robust satisfaction intervals for Signal Temporal Logic."""

from rosi.engine import BoundedMonitor, StepResult, Verdict, create_monitor
from rosi.formula import parse
from rosi.interval import Interval
from rosi.signal import PartialSignal, Sample

__all__ = [
    "BoundedMonitor",
    "Interval",
    "PartialSignal",
    "Sample",
    "StepResult",
    "Verdict",
    "create_monitor",
    "parse",
]
