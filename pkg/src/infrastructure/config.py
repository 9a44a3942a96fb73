"""
Run configuration for the cyclic-weights CLI.

Settings come from three layers, later ones winning:
1. Built-in defaults
2. Environment variables (a .env file is loaded first via python-dotenv)
3. Command-line flags

Environment variables:
    CW_WORK_LIMIT     Work limit for whatever sweep the command runs
    CW_WORKERS        Worker process count
    CW_LOG_LEVEL      Log level name (default WARNING)
    CW_CLOUD_LOGGING  1/true to attach the Cloud Logging handler
    CW_TABLE_CAP      Largest field size that gets exp/log tables
"""

import logging
import os
from dataclasses import dataclass
from typing import Any, Optional, Tuple

from dotenv import load_dotenv

from src.algebra.gf import DEFAULT_TABLE_CAP
from src.errors import InvalidParameterError
from src.infrastructure.logging import parse_level
from src.infrastructure.workers import default_workers

FORMATS = ("json", "csv", "table")
SOURCES = ("theory", "empirical", "both")

_TRUE = {"1", "true", "yes", "on"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    family: str = "C1"
    source: str = "theory"
    strategy: str = "transform"
    format: str = "json"
    work_limit: Optional[int] = None
    workers: int = 1
    modulus: Optional[Tuple[int, ...]] = None
    out: Optional[str] = None
    log_level: int = logging.WARNING
    cloud_logging: bool = False
    table_cap: int = DEFAULT_TABLE_CAP


def parse_modulus(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    """'1,0,1' -> (1, 0, 1), constant term first."""
    if text is None or text == "":
        return None
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InvalidParameterError(
            f"--modulus must be comma-separated integers c0,c1,...,1, got {text!r}"
        )


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameterError(f"{name} must be an integer, got {raw!r}")


def _positive(name: str, value: Optional[int]) -> Optional[int]:
    if value is not None and value < 1:
        raise InvalidParameterError(f"{name} must be at least 1, got {value}")
    return value


def load_config(args: Any) -> RunConfig:
    """
    Build a validated RunConfig from parsed arguments and the environment.

    Args:
        args: argparse namespace from create_parser()

    Returns:
        RunConfig

    Raises:
        InvalidParameterError: for malformed flags or environment values
    """
    load_dotenv()

    work_limit = getattr(args, "work_limit", None)
    if work_limit is None:
        work_limit = _env_int("CW_WORK_LIMIT")

    workers = getattr(args, "workers", None)
    if workers is None:
        workers = _env_int("CW_WORKERS")
    if workers is None:
        workers = default_workers()

    try:
        log_level = parse_level(os.getenv("CW_LOG_LEVEL"))
    except ValueError as e:
        raise InvalidParameterError(str(e))
    if getattr(args, "verbose", False):
        log_level = min(log_level, logging.INFO)

    table_cap = _env_int("CW_TABLE_CAP")

    return RunConfig(
        command=args.command,
        p=getattr(args, "p", None),
        m=getattr(args, "m", None),
        k=getattr(args, "k", None),
        family=str(getattr(args, "code", "c1")).upper(),
        source=getattr(args, "source", "theory"),
        strategy=getattr(args, "strategy", "transform"),
        format=getattr(args, "format", "json"),
        work_limit=_positive("work limit", work_limit),
        workers=_positive("workers", workers) or 1,
        modulus=parse_modulus(getattr(args, "modulus", None)),
        out=getattr(args, "out", None),
        log_level=log_level,
        cloud_logging=os.getenv("CW_CLOUD_LOGGING", "").strip().lower() in _TRUE,
        table_cap=DEFAULT_TABLE_CAP if table_cap is None else table_cap,
    )
