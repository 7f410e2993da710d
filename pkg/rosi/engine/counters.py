from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounter:
    """Counts predicate evaluations, interval min/max/neg and filter comparisons."""

    count: int = 0

    def add(self, n: int = 1) -> None:
        self.count += n
