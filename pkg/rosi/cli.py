"""
`rosi-monitor`: stream CSV samples through a monitor and print JSON lines.

Rows are pulled one at a time; each step's record is flushed before the next
row is read, and reading stops at the first decided verdict unless early stop
is off.

Exit codes: 0 satisfied, 1 falsified, 2 unknown at end of input,
64 usage errors (formula, flags, profile, bounds, empty input), 65 data errors
(malformed CSV, sample ordering, minimum-gap violations), 70 internal errors.
"""

from __future__ import annotations

from contextlib import contextmanager
import logging
import math
from pathlib import Path
import sys
from typing import Iterator, TextIO

import click
from pydantic import BaseModel, ValidationError

from rosi.config import BoundModel, MonitorConfigError, MonitorProfileModel, RunConfig, load_monitor_config
from rosi.engine.bounded import StepResult
from rosi.engine.routing import Monitor, UnsupportedFormulaError, create_monitor
from rosi.engine.untimed import DeltaViolationError, MissingDeltaError
from rosi.engine.verdict import Verdict
from rosi.formula.analysis import UnboundedFormulaError
from rosi.formula.ast import predicates
from rosi.formula.parser import FormulaSyntaxError, parse
from rosi.interval import IntervalError
from rosi.logging_config import configure_logging
from rosi.schemas import StepRecord, SummaryRecord
from rosi.settings import get_settings
from rosi.signal import CsvSampleReader, EmptyInputError, Sample, SignalError, SignalFormatError

logger = logging.getLogger(__name__)

EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70

_VERDICT_EXIT = {Verdict.SATISFIED: 0, Verdict.FALSIFIED: 1, Verdict.UNKNOWN: 2}

_USAGE_ERRORS = (
    FormulaSyntaxError,
    UnsupportedFormulaError,
    MissingDeltaError,
    UnboundedFormulaError,
    IntervalError,
    EmptyInputError,
    OSError,
)
_DATA_ERRORS = (SignalError, DeltaViolationError)


# ---- Run -----------------------------------------------------------------------------


def run(cfg: RunConfig, out: TextIO | None = None) -> int:
    """Monitor the configured input and return the process exit status."""
    out = out or sys.stdout
    try:
        return _run(cfg, out)
    except _USAGE_ERRORS as exc:
        return _fail(exc, EX_USAGE)
    except _DATA_ERRORS as exc:
        return _fail(exc, EX_DATAERR)
    except Exception as exc:
        logger.exception("Monitor failed")
        click.echo(f"internal error: {exc!r}", err=True)
        return EX_SOFTWARE


def _run(cfg: RunConfig, out: TextIO) -> int:
    formula = parse(cfg.formula)
    monitor = create_monitor(
        formula,
        cfg.interval_bounds(),
        start_time=cfg.start_time,
        delta=cfg.delta,
        sliding_optimization=cfg.sliding_optimization,
        freeze_decided=cfg.early_stop,
    )

    with _open_input(cfg.input_path) as stream:
        reader = CsvSampleReader(stream)
        missing = sorted({v for p in predicates(formula) for v in p.variables} - set(reader.variables))
        if missing:
            raise SignalFormatError(f"formula variables missing from header: {', '.join(missing)}", line=1)

        result: StepResult | None = None
        stopped = False
        for sample in reader:
            result = _step(monitor, sample, reader)
            if not cfg.final_only:
                _emit(out, StepRecord.from_result(result))
            if cfg.early_stop and monitor.decided:
                logger.info("Verdict %s decided at t=%s; stopping early", result.verdict.value, sample.time)
                stopped = True
                break
        if result is None:
            raise EmptyInputError("input holds a header but no samples")

        available: int | None = reader.rows
        if stopped:
            available = None if cfg.input_path == "-" else reader.rows + reader.remaining()

    if cfg.final_only:
        _emit(out, StepRecord.from_result(result))
    _emit(out, SummaryRecord(consumed=reader.rows, available=available, verdict=result.verdict))
    logger.info("Consumed %d samples (%s available), %d operations", reader.rows, available, monitor.operations)
    return _VERDICT_EXIT[result.verdict]


def _step(monitor: Monitor, sample: Sample, reader: CsvSampleReader) -> StepResult:
    try:
        return monitor.step(sample)
    except SignalFormatError:
        raise
    except SignalError as exc:
        raise SignalFormatError(str(exc), line=reader.line) from exc


@contextmanager
def _open_input(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdin
        return
    with open(path, encoding="utf-8", newline="") as stream:
        yield stream


def _emit(out: TextIO, record: BaseModel) -> None:
    out.write(record.model_dump_json() + "\n")
    out.flush()


def _fail(exc: Exception, code: int) -> int:
    logger.error("%s", exc)
    click.echo(f"error: {exc}", err=True)
    return code


# ---- Command -------------------------------------------------------------------------


def _parse_bounds(ctx: click.Context, param: click.Parameter, values: tuple[str, ...]) -> dict[str, BoundModel]:
    bounds: dict[str, BoundModel] = {}
    for raw in values:
        name, sep, ends = raw.partition("=")
        lo, comma, hi = ends.partition(",")
        if not sep or not comma or not name.strip():
            raise click.BadParameter(f"expected VAR=LO,HI, got {raw!r}", ctx=ctx, param=param)
        try:
            bounds[name.strip()] = BoundModel(lo=float(lo), hi=float(hi))
        except (ValueError, ValidationError) as exc:
            raise click.BadParameter(f"invalid bound {raw!r}: {exc}", ctx=ctx, param=param) from exc
    return bounds


def _load_profile(config_path: Path | None) -> MonitorProfileModel:
    if config_path is not None:
        return load_monitor_config(config_path)
    default = get_settings().resolved_config_path()
    if default.is_file():
        return load_monitor_config(default)
    logger.debug("No monitor profile at %s; using defaults", default)
    return MonitorProfileModel()


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("-f", "--formula", default=None, help="STL formula to monitor.")
@click.option(
    "--formula-file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Read the formula from a file instead of -f.",
)
@click.option(
    "-i",
    "--input",
    "input_path",
    default="-",
    show_default=True,
    type=click.Path(dir_okay=False, allow_dash=True),
    help="CSV file with a 'time,<vars>' header; '-' reads stdin.",
)
@click.option(
    "--bound",
    "bounds",
    multiple=True,
    metavar="VAR=LO,HI",
    callback=_parse_bounds,
    help="Range of a variable's unknown future values; repeatable.",
)
@click.option("--delta", type=float, default=None, help="Minimum gap between consecutive samples.")
@click.option("--start-time", type=float, default=None, help="Time of the first sample.")
@click.option("--no-early-stop", is_flag=True, help="Consume the whole input even after a verdict.")
@click.option("--final-only", is_flag=True, help="Print only the last step record.")
@click.option("--no-sliding-optim", is_flag=True, help="Recompute windows from history on every step.")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Monitor profile YAML (defaults to ROSI_CONFIG_PATH or config/monitor.yaml).",
)
@click.option("--log-level", default=None, help="Overrides ROSI_LOG_LEVEL.")
def monitor_command(
    formula: str | None,
    formula_file: Path | None,
    input_path: str,
    bounds: dict[str, BoundModel],
    delta: float | None,
    start_time: float | None,
    no_early_stop: bool,
    final_only: bool,
    no_sliding_optim: bool,
    config_path: Path | None,
    log_level: str | None,
) -> int:
    try:
        configure_logging(log_level or get_settings().log_level)
    except ValueError as exc:
        raise click.UsageError(f"invalid log level: {exc}") from exc

    if (formula is None) == (formula_file is None):
        raise click.UsageError("give exactly one of --formula and --formula-file")
    if formula_file is not None:
        formula = formula_file.read_text(encoding="utf-8")

    try:
        profile = _load_profile(config_path)
        cfg = RunConfig(
            formula=formula,
            input_path=input_path,
            bounds={**profile.bounds, **bounds},
            delta=delta if delta is not None else profile.delta,
            start_time=start_time if start_time is not None else profile.start_time,
            early_stop=profile.early_stop and not no_early_stop,
            final_only=profile.final_only or final_only,
            sliding_optimization=profile.sliding_optimization and not no_sliding_optim,
        )
    except (MonitorConfigError, ValidationError) as exc:
        raise click.UsageError(str(exc)) from exc

    if cfg.delta is not None and not math.isfinite(cfg.delta):
        raise click.UsageError("--delta must be finite")
    return run(cfg, sys.stdout)


def main(argv: list[str] | None = None) -> None:
    try:
        code = monitor_command.main(args=argv, prog_name="rosi-monitor", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        code = EX_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        code = 130
    sys.exit(code or 0)


if __name__ == "__main__":
    main()
