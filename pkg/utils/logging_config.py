"""
Logging configuration for structured logging

Uses structlog; output goes to stderr so command payloads own stdout.
"""

import logging
import sys
from typing import Any, Dict, Optional

import structlog


def setup_logging(config: Optional[Dict[str, Any]] = None):
    """
    Configure structured logging.

    Args:
        config: Logging configuration dictionary
    """
    if config is None:
        config = {"level": "INFO", "format": "console"}

    log_level = getattr(logging, str(config.get("level", "INFO")).upper())

    # Configure structlog
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.dev.set_exc_info,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.JSONRenderer() if config.get("format") == "json"
            else structlog.dev.ConsoleRenderer(colors=False)
        ],
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        context_class=dict,
        # stderr is looked up per call so redirected streams are honored
        logger_factory=lambda *args: structlog.PrintLogger(file=sys.stderr),
        cache_logger_on_first_use=False
    )

    # Also configure standard library logging
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=log_level
    )


def bind_run_context(**context: Any) -> None:
    """Replace the context merged into every log line of the current run."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**context)
