"""Online monitoring engines: bounded-horizon worklists and untimed summaries."""

from rosi.engine.bounded import BoundedMonitor, Network, StepResult
from rosi.engine.counters import OpCounter
from rosi.engine.routing import Monitor, UnsupportedFormulaError, create_monitor
from rosi.engine.sliding import SlidingFilter, sliding_max, sliding_min
from rosi.engine.timeline import Instant, NodeUpdate, WorklistEntry
from rosi.engine.untimed import (
    BufferedSummaryMonitor,
    DeltaViolationError,
    MissingDeltaError,
    SummaryMonitor,
    SummaryState,
    absorb,
    initial_state,
    step_F,
    step_F_and_F,
    step_F_and_G,
    step_FG,
    step_G,
    step_G_or_F,
    step_G_or_G,
    step_GF,
    step_general,
    step_U,
)
from rosi.engine.verdict import Verdict, verdict_of

__all__ = [
    "BoundedMonitor",
    "BufferedSummaryMonitor",
    "DeltaViolationError",
    "Instant",
    "MissingDeltaError",
    "Monitor",
    "Network",
    "NodeUpdate",
    "OpCounter",
    "SlidingFilter",
    "StepResult",
    "SummaryMonitor",
    "SummaryState",
    "UnsupportedFormulaError",
    "Verdict",
    "WorklistEntry",
    "absorb",
    "create_monitor",
    "initial_state",
    "sliding_max",
    "sliding_min",
    "step_F",
    "step_F_and_F",
    "step_F_and_G",
    "step_FG",
    "step_G",
    "step_G_or_F",
    "step_G_or_G",
    "step_GF",
    "step_U",
    "step_general",
    "verdict_of",
]
