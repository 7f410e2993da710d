"""JSON-lines records written by `rosi-monitor`."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, field_serializer

from rosi.engine.bounded import StepResult
from rosi.engine.verdict import Verdict


def _endpoint(value: float) -> float | str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


class StepRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    time: float
    rosi: tuple[float, float]
    verdict: Verdict

    @field_serializer("rosi")
    def _serialize_rosi(self, rosi: tuple[float, float]) -> list[float | str]:
        # strict JSON has no infinity literal
        return [_endpoint(rosi[0]), _endpoint(rosi[1])]

    @classmethod
    def from_result(cls, result: StepResult) -> StepRecord:
        return cls(time=result.time, rosi=(result.rosi.lo, result.rosi.hi), verdict=result.verdict)


class SummaryRecord(BaseModel):
    """`available` is None when reading stopped early on an unbounded stream."""

    model_config = ConfigDict(frozen=True)

    consumed: int
    available: int | None
    verdict: Verdict
