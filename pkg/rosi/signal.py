"""
Timed multi-variable samples with piecewise-constant reconstruction.

`PartialSignal` is the prefix observed so far: strictly increasing sample
times starting at t0, values held constant until the next sample, and UNKNOWN
(`None`) after the newest sample. Per-variable bounds describe what the
unknown future may do.
"""

from __future__ import annotations

from bisect import bisect_right
import csv
from dataclasses import dataclass, field
import logging
import math
from typing import Iterable, Iterator, Mapping

from rosi.interval import UNBOUNDED, Interval

logger = logging.getLogger(__name__)


class SignalError(ValueError):
    """Raised when samples violate ordering or shape constraints."""


class SignalFormatError(SignalError):
    """Raised for malformed CSV input; `line` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Sample:
    """One observation: a time stamp and a value per variable."""

    time: float
    values: Mapping[str, float]

    def __post_init__(self) -> None:
        if not math.isfinite(self.time) or self.time < 0:
            raise SignalError(f"Sample time must be a finite non-negative number, got {self.time}")


@dataclass
class PartialSignal:
    """Observed prefix of a trace; `append` is the only mutator."""

    variables: tuple[str, ...] = ()
    start_time: float = 0.0
    bounds: dict[str, Interval] = field(default_factory=dict)
    _times: list[float] = field(default_factory=list, repr=False)
    _samples: list[Sample] = field(default_factory=list, repr=False)

    def __len__(self) -> int:
        return len(self._samples)

    @property
    def samples(self) -> tuple[Sample, ...]:
        return tuple(self._samples)

    @property
    def times(self) -> tuple[float, ...]:
        return tuple(self._times)

    @property
    def last_time(self) -> float | None:
        return self._times[-1] if self._times else None

    def bound_of(self, variable: str) -> Interval:
        return self.bounds.get(variable, UNBOUNDED)

    def append(self, sample: Sample) -> None:
        if not self._samples:
            if sample.time != self.start_time:
                raise SignalError(
                    f"First sample must be at start time {self.start_time}, got {sample.time}"
                )
            if not self.variables:
                self.variables = tuple(sample.values)
        elif sample.time <= self._times[-1]:
            raise SignalError(
                f"Sample times must be strictly increasing: {sample.time} after {self._times[-1]}"
            )

        missing = [v for v in self.variables if v not in sample.values]
        if missing:
            raise SignalError(f"Sample at {sample.time} is missing variables: {', '.join(missing)}")

        self._times.append(sample.time)
        self._samples.append(sample)

    def value_at(self, t: float) -> Mapping[str, float] | None:
        """Values holding at `t`; None when `t` lies after the newest sample."""
        if t < self.start_time:
            raise SignalError(f"Time {t} precedes signal start {self.start_time}")
        if not self._samples or t > self._times[-1]:
            return None
        return self._samples[bisect_right(self._times, t) - 1].values

    def prefix(self, n: int) -> PartialSignal:
        """New signal holding the first `n` samples."""
        sig = PartialSignal(self.variables, self.start_time, dict(self.bounds))
        for sample in self._samples[:n]:
            sig.append(sample)
        return sig


def signal_from_rows(
    rows: Iterable[tuple[float, Mapping[str, float]]],
    *,
    start_time: float | None = None,
    bounds: Mapping[str, Interval] | None = None,
) -> PartialSignal:
    """Build a signal from (time, values) pairs; start time defaults to the first row."""
    rows = list(rows)
    if start_time is None:
        start_time = rows[0][0] if rows else 0.0
    sig = PartialSignal(start_time=start_time, bounds=dict(bounds or {}))
    for time, values in rows:
        sig.append(Sample(time, dict(values)))
    return sig


# ---- CSV ingestion -------------------------------------------------------------------


class EmptyInputError(SignalFormatError):
    """Raised when CSV input holds no header row."""

    def __init__(self, message: str = "empty input"):
        super().__init__(message, line=1)


class CsvSampleReader:
    """
    Pull-based reader of `time,<var1>,<var2>,...` CSV rows.

    The header is read on construction; iterating yields one `Sample` per data
    row and reads no further ahead than that row. Times must increase strictly
    from row to row; the start time is checked by `PartialSignal.append`.
    """

    def __init__(self, lines: Iterable[str]):
        self._reader = csv.reader(lines)
        header = next((row for row in self._reader if any(cell.strip() for cell in row)), None)
        if header is None:
            raise EmptyInputError()
        header = [name.strip() for name in header]
        line = self._reader.line_num
        if header[0] != "time" or len(header) < 2:
            raise SignalFormatError("header must be 'time,<var1>,...'", line=line)
        self.variables = tuple(header[1:])
        if len(set(self.variables)) != len(self.variables):
            raise SignalFormatError("duplicate variable in header", line=line)
        self.rows = 0
        self._last_time: float | None = None

    def __iter__(self) -> Iterator[Sample]:
        for row in self._reader:
            if not any(cell.strip() for cell in row):
                continue
            sample = self._parse(row, self._reader.line_num)
            self._last_time = sample.time
            self.rows += 1
            yield sample

    @property
    def line(self) -> int:
        """1-based line number of the row read last."""
        return self._reader.line_num

    def remaining(self) -> int:
        """Count the non-blank rows not yet read, without parsing them."""
        return sum(1 for row in self._reader if any(cell.strip() for cell in row))

    def _parse(self, row: list[str], line: int) -> Sample:
        width = len(self.variables) + 1
        if len(row) != width:
            raise SignalFormatError(f"expected {width} columns, got {len(row)}", line=line)
        try:
            numbers = [float(cell) for cell in row]
        except ValueError as exc:
            raise SignalFormatError(f"non-numeric cell ({exc})", line=line) from exc
        if not all(math.isfinite(n) for n in numbers):
            raise SignalFormatError("non-finite value", line=line)
        if self._last_time is not None and numbers[0] <= self._last_time:
            raise SignalFormatError(f"time {numbers[0]} does not increase after {self._last_time}", line=line)
        try:
            return Sample(numbers[0], dict(zip(self.variables, numbers[1:])))
        except SignalError as exc:
            raise SignalFormatError(str(exc), line=line) from exc


def read_csv_samples(lines: Iterable[str]) -> tuple[tuple[str, ...], list[Sample]]:
    """Parse a whole CSV text into its variables and samples."""
    reader = CsvSampleReader(lines)
    samples = list(reader)
    logger.debug("Read %d samples over variables %s", len(samples), ", ".join(reader.variables))
    return reader.variables, samples
