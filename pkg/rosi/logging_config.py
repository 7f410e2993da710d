from __future__ import annotations

import logging
import sys


def configure_logging(level: str = "INFO") -> None:
    """
    Set the level of the `rosi` package logger.

    Notes:
    - Records go to stderr so stdout carries only JSON lines.
    - A handler is installed only when the root logger has none (tests and host
      applications keep their own).
    - Set `ROSI_LOG_LEVEL=DEBUG` to trace per-step RoSI values.
    """

    normalized = level.upper()
    if not logging.getLogger().handlers:
        logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("rosi").setLevel(normalized)
    logging.getLogger("rosi").propagate = True
