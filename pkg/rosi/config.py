"""
Monitor profile (YAML) and the fully-resolved run configuration.

The profile supplies defaults; `RunConfig` is what a run actually uses after
command-line overrides are applied.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator
import yaml

from rosi.interval import Interval


class MonitorConfigError(ValueError):
    """Raised when a monitor profile cannot be loaded."""


class BoundModel(BaseModel):
    lo: float = -math.inf
    hi: float = math.inf

    @model_validator(mode="after")
    def _ordered(self) -> BoundModel:
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise ValueError(f"bound lower end {self.lo} must not exceed upper end {self.hi}")
        if self.lo == math.inf or self.hi == -math.inf:
            raise ValueError(f"bound [{self.lo}, {self.hi}] holds no finite value")
        return self

    def to_interval(self) -> Interval:
        return Interval(self.lo, self.hi)


class MonitorProfileModel(BaseModel):
    start_time: float = Field(default=0.0, ge=0.0)
    delta: float | None = Field(default=None, gt=0.0)
    early_stop: bool = True
    final_only: bool = False
    sliding_optimization: bool = True
    bounds: dict[str, BoundModel] = Field(default_factory=dict)


class RunConfig(BaseModel):
    """Everything one CLI run needs."""

    formula: str
    input_path: str = "-"
    bounds: dict[str, BoundModel] = Field(default_factory=dict)
    delta: float | None = Field(default=None, gt=0.0)
    start_time: float = Field(default=0.0, ge=0.0)
    early_stop: bool = True
    final_only: bool = False
    sliding_optimization: bool = True

    @field_validator("formula")
    @classmethod
    def _non_empty(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("formula must not be empty")
        return value

    def interval_bounds(self) -> dict[str, Interval]:
        return {name: bound.to_interval() for name, bound in self.bounds.items()}


def load_monitor_config(path: Path) -> MonitorProfileModel:
    try:
        raw_text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MonitorConfigError(f"Cannot read monitor config {path}: {exc}") from exc
    raw: dict[str, Any] = yaml.safe_load(raw_text) or {}

    if "monitor" not in raw:
        raise MonitorConfigError(f"Missing top-level 'monitor' key in config: {path}")

    return MonitorProfileModel.model_validate(raw["monitor"] or {})
