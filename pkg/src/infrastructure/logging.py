"""
Structured logging for cyclic-weights runs.

This module provides:
- CyclicWeightsLogger: console logging on stderr with optional Cloud Logging
- Structured records for sweeps, errors and metrics
- A process-wide logger via get_logger()
- track_performance, a decorator timing full enumeration sweeps

Nothing here writes to stdout; stdout carries command output only.
"""

import logging
import sys
import time
import traceback
from datetime import datetime, timezone
from functools import wraps
from typing import Any, Callable, Dict, Optional, Union

try:
    from google.cloud import logging as cloud_logging
    from google.cloud.logging_v2.handlers import CloudLoggingHandler
    CLOUD_LOGGING_AVAILABLE = True
except ImportError:
    CLOUD_LOGGING_AVAILABLE = False

LOG_NAME = "cyclic_weights"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def parse_level(level: Union[str, int, None], default: int = logging.WARNING) -> int:
    """Accept a level name ('info', 'DEBUG') or number."""
    if level is None or level == "":
        return default
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ValueError(f"unknown log level {level!r}")
    return value


class CyclicWeightsLogger:
    """
    Centralized logging for field construction, sweeps and CLI commands.

    Module loggers named 'cyclic_weights.<module>' propagate into the handlers
    installed here.
    """

    def __init__(
        self,
        project_id: Optional[str] = None,
        log_name: str = LOG_NAME,
        enable_cloud_logging: bool = False,
        level: int = logging.WARNING
    ):
        """
        Initialize the logger.

        Args:
            project_id: Google Cloud project ID (auto-detected if not provided)
            log_name: Logger and Cloud Logging log name
            enable_cloud_logging: Attach a Cloud Logging handler when the package is installed
            level: Threshold for the console handler
        """
        self.project_id = project_id
        self.log_name = log_name
        self.enable_cloud_logging = enable_cloud_logging and CLOUD_LOGGING_AVAILABLE
        self.level = level

        self.logger = logging.getLogger(log_name)
        self.logger.setLevel(level)

        self._setup_handlers()

    def _setup_handlers(self):
        """Console handler on stderr, plus Cloud Logging if enabled."""
        self.logger.handlers.clear()

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(self.level)
        console_handler.setFormatter(
            logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        )
        self.logger.addHandler(console_handler)
        self.console_handler = console_handler

        if self.enable_cloud_logging:
            try:
                client = cloud_logging.Client(project=self.project_id)
                cloud_handler = CloudLoggingHandler(client, name=self.log_name)
                cloud_handler.setLevel(logging.INFO)
                self.logger.addHandler(cloud_handler)
                self.logger.info("Cloud Logging enabled")
            except Exception as e:
                self.logger.warning(f"Failed to set up Cloud Logging: {e}. Using stderr only.")
                self.enable_cloud_logging = False

    def set_level(self, level: int) -> None:
        self.level = level
        self.logger.setLevel(level)
        self.console_handler.setLevel(level)

    def log_sweep(
        self,
        component: str,
        action: str,
        inputs: Optional[Dict[str, Any]] = None,
        outputs: Optional[Dict[str, Any]] = None,
        duration_ms: Optional[float] = None,
        metadata: Optional[Dict[str, Any]] = None
    ):
        """
        Log a structured sweep record.

        Args:
            component: Module doing the work (e.g. "codes", "specdist")
            action: What ran (e.g. "empirical_wd_c1", "rank_sweep")
            inputs: Parameters of the run
            outputs: Summary of the result
            duration_ms: Wall time in milliseconds
            metadata: Anything else worth keeping
        """
        record = {"component": component, "action": action, "timestamp": _now()}
        if inputs:
            record["inputs"] = inputs
        if outputs:
            record["outputs"] = outputs
        if duration_ms is not None:
            record["duration_ms"] = duration_ms
        if metadata:
            record["metadata"] = metadata

        suffix = f" in {duration_ms:.1f} ms" if duration_ms is not None else ""
        self.logger.info(f"Sweep: {component}.{action}{suffix}", extra=record)

    def log_error(
        self,
        component: str,
        error: Exception,
        context: Optional[Dict[str, Any]] = None
    ):
        """
        Log an error with stack trace and context.

        Args:
            component: Where the error occurred
            error: The exception object
            context: Additional context
        """
        record = {
            "component": component,
            "error_type": type(error).__name__,
            "error_message": str(error),
            "stack_trace": traceback.format_exc(),
            "timestamp": _now(),
        }
        if context:
            record["context"] = context

        self.logger.error(
            f"Error in {component}: {type(error).__name__}: {error}",
            extra=record,
            exc_info=self.logger.isEnabledFor(logging.DEBUG)
        )

    def log_metric(
        self,
        metric_name: str,
        value: float,
        unit: str = "",
        labels: Optional[Dict[str, str]] = None
    ):
        """
        Log a numeric metric.

        Args:
            metric_name: e.g. "pairs_enumerated"
            value: Metric value
            unit: Unit of measurement
            labels: Additional labels for filtering
        """
        record = {"metric_name": metric_name, "value": value, "unit": unit, "timestamp": _now()}
        if labels:
            record["labels"] = labels
        self.logger.info(f"Metric: {metric_name}={value}{unit}", extra=record)

    def info(self, message: str, **kwargs):
        self.logger.info(message, extra=kwargs)


_global_logger: Optional[CyclicWeightsLogger] = None


def get_logger(
    project_id: Optional[str] = None,
    enable_cloud_logging: bool = False,
    level: Optional[int] = None
) -> CyclicWeightsLogger:
    """
    Get or create the global logger instance.

    Args:
        project_id: Google Cloud project ID
        enable_cloud_logging: Whether to enable Cloud Logging on first creation
        level: If given, (re)sets the threshold

    Returns:
        CyclicWeightsLogger instance
    """
    global _global_logger

    if _global_logger is None:
        _global_logger = CyclicWeightsLogger(
            project_id=project_id,
            enable_cloud_logging=enable_cloud_logging,
            level=logging.WARNING if level is None else level
        )
    elif level is not None:
        _global_logger.set_level(level)

    return _global_logger


def reset_logger() -> None:
    """Drop the global instance so the next get_logger() rebuilds it."""
    global _global_logger
    if _global_logger is not None:
        _global_logger.logger.handlers.clear()
    _global_logger = None


def track_performance(component: str, action: str) -> Callable:
    """
    Decorator timing a sweep and logging success or failure.

    Usage:
        @track_performance("codes", "empirical_wd_c2")
        def empirical_wd_c2(ctx, k):
            ...

    Exceptions are logged and re-raised unchanged.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger()
            start_time = time.perf_counter()

            try:
                result = func(*args, **kwargs)
            except Exception as e:
                duration_ms = (time.perf_counter() - start_time) * 1000
                logger.log_error(
                    component=component,
                    error=e,
                    context={"action": action, "duration_ms": duration_ms}
                )
                raise

            duration_ms = (time.perf_counter() - start_time) * 1000
            logger.log_sweep(
                component=component,
                action=action,
                duration_ms=duration_ms,
                metadata={"status": "success"}
            )
            return result

        return wrapper
    return decorator


__all__ = [
    "CyclicWeightsLogger",
    "get_logger",
    "reset_logger",
    "parse_level",
    "track_performance",
    "CLOUD_LOGGING_AVAILABLE",
]
