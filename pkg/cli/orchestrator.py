"""
Command runner - coordinates one CLI invocation

Routes a subcommand to its handler, times it, writes the payload with its
manifest and maps failures to exit codes:

- 0: success
- 2: input error (unreadable or invalid document, parameter outside its domain)
- 3: resource error (exact enumeration over budget, or out of memory)
"""

import sys
import time
from argparse import Namespace
from typing import Any, Dict, Optional

import structlog

from cli.commands import COMMANDS
from utils.errors import BudgetExceededError
from utils.logging_config import bind_run_context
from utils.models import RunManifest
from utils.run_store import RunStore

logger = structlog.get_logger()

TOOL_VERSION = "0.1.0"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3


class CommandRunner:
    """
    Runs subcommands and records their provenance.
    """

    def __init__(self, config: Dict[str, Any], store: Optional[RunStore] = None):
        """
        Initialize the runner.

        Args:
            config: Loaded configuration dictionary
            store: Artifact store (built from the output config section when None)
        """
        self.config = config
        suffix = (config.get("output") or {}).get("manifest_suffix", ".manifest.json")
        self.store = store or RunStore(manifest_suffix=suffix)

        logger.debug("command_runner_initialized", commands=sorted(COMMANDS))

    def run(self, command: str, args: Namespace) -> int:
        """
        Execute one subcommand.

        Args:
            command: Subcommand name
            args: Parsed arguments

        Returns:
            Process exit code
        """
        bind_run_context(command=command)
        handler = COMMANDS.get(command)
        if handler is None:
            self._fail("command_unknown", f"unknown command {command!r}")
            return EXIT_INPUT

        logger.info("command_started", input=getattr(args, "input", None))
        start = time.perf_counter()

        try:
            result = handler(args, self.config)
        except BudgetExceededError as e:
            self._fail("command_budget_exceeded", str(e))
            return EXIT_BUDGET
        except MemoryError:
            self._fail("command_out_of_memory", "out of memory; lower --budget or the scheme size")
            return EXIT_BUDGET
        except (ValueError, IndexError) as e:
            self._fail("command_input_invalid", str(e))
            return EXIT_INPUT

        manifest = RunManifest(
            command=command,
            input_digest=result["input_digest"],
            parameters=result["parameters"],
            tool_version=TOOL_VERSION,
            duration_s=time.perf_counter() - start,
        )

        try:
            self.store.save(result["payload"], manifest, getattr(args, "out", None))
        except OSError as e:
            self._fail("command_output_failed", str(e))
            return EXIT_INPUT

        logger.info("command_completed", duration_s=manifest.duration_s)
        return EXIT_OK

    def _fail(self, event: str, message: str) -> None:
        logger.error(event, error=message)
        print(f"error: {message}", file=sys.stderr)
