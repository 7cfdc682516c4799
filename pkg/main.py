"""
Two-way wire-tap secrecy toolkit - main entry point

Computes secrecy rate regions, optimal and jamming power allocations, and
exact equivocation of small binary schemes from JSON input documents.
"""

import argparse
import sys
from typing import List, Optional

import structlog

from cli.orchestrator import EXIT_INPUT, TOOL_VERSION, CommandRunner
from utils.config import load_config
from utils.errors import ConfigError
from utils.logging_config import setup_logging

logger = structlog.get_logger()


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per computation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (stdout when omitted); a manifest is written next to it")
    common.add_argument("--seed", type=int, help="codebook seed (overrides document and config)")
    common.add_argument("--budget", type=int, help="enumeration budget in weighted states")
    common.add_argument("--config", default="config.yaml", help="configuration file")
    common.add_argument("--log-level", type=str.upper, choices=("DEBUG", "INFO", "WARNING", "ERROR"))

    parser = argparse.ArgumentParser(
        prog="twwt",
        description="Secrecy rates, power allocation and exact equivocation for two-way wire-tap channels.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("standardize", parents=[common], help="raw Gaussian channel to standard form")
    p.add_argument("input")

    p = sub.add_parser("region", parents=[common], help="achievable region vertices as CSV")
    p.add_argument("input")
    p.add_argument("--grid", type=int, help="power lattice points per axis (Gaussian only)")

    p = sub.add_parser("optimize", parents=[common], help="optimal power allocation")
    p.add_argument("input")
    p.add_argument("--mode", choices=("sum", "jam"), required=True)
    p.add_argument("--oracle-grid", type=int, nargs="?", const=0,
                   help="also run the lattice oracle with this many points per axis (configured grid when bare)")

    p = sub.add_parser("jam-sweep", parents=[common], help="jamming rate as a function of p_2, as CSV")
    p.add_argument("input")
    p.add_argument("--points", type=int)

    p = sub.add_parser("verify", parents=[common], help="exact equivocation of a binary scheme")
    p.add_argument("input")
    p.add_argument("--eps-w", type=float, required=True, help="eavesdropper crossover probability")
    p.add_argument("--eps-self", type=float, help="receiver crossover probability for the decoding error")
    p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("batw-jam", parents=[common], help="binary cooperative jamming")
    p.add_argument("input")

    p = sub.add_parser("design", parents=[common], help="size a binary scheme for a channel")
    p.add_argument("input")
    p.add_argument("--n", type=int, help="block length")
    p.add_argument("--books", action="store_true", help="include the drawn codebooks in the document")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except ConfigError as e:
        # logging is not configured yet
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    if args.log_level:
        config.setdefault("logging", {})["level"] = args.log_level
    setup_logging(config.get("logging", {}))
    logger.debug("twwt_starting", command=args.command, config=args.config)

    return CommandRunner(config).run(args.command, args)


if __name__ == "__main__":
    sys.exit(main())
