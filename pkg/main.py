#!/usr/bin/env python3
"""
============================================================================
Numeral-MG: Minimalist Grammar Workbench for Numerals
Utterance-meaning learning with merge, move and lambda semantics
============================================================================

MISSION - NEVER TO BE VIOLATED:
    Derive   → Build every numeral through merge and move, nothing else
    Mean     → Keep arithmetic semantics exact through lambda application
    Learn    → Acquire the lexicon from a counting teacher's feedback
    Account  → Record every lexicon change so any run can be replayed

============================================================================
Main Entry Point - Command-line workbench
----------------------------------------------------------------------------
FILE VERSION: v1.0-5-5.3-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 5 - Persistence & CLI
CLEAN ARCHITECTURE: Compliant
============================================================================

USAGE:
    python main.py train --max 19 --lexicon lexicon.txt --trace trace.jsonl
    python main.py generate --lexicon lexicon.txt --value 13
    python main.py parse --lexicon lexicon.txt --utterance thirteen        # term<TAB>value per meaning
    python main.py derive --lexicon lexicon.txt --items eps,teen,thir --show-steps
    python main.py lexicon-show --lexicon lexicon.txt

ENVIRONMENT VARIABLES:
    NUMG_ENVIRONMENT         - Environment name (production, testing, development)
    NUMG_MAX_NUMBER          - Count up to this number (1..99)
    NUMG_ORTHOGRAPHY         - Teacher spelling (paper, standard)
    NUMG_MAX_LEAVES          - Leaf bound for generate/parse
    NUMG_LEARNER_MAX_LEAVES  - Leaf bound while the learner reproduces UMPs
    NUMG_CHART_CAP           - Chart item cap
    NUMG_LOG_LEVEL           - Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    NUMG_LOG_FORMAT          - Log format (human, json)
"""

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

# Add project root to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli.commands import (  # noqa: E402
    ExitCode,
    cmd_derive,
    cmd_generate,
    cmd_lexicon_show,
    cmd_parse,
    cmd_train,
)
from src.managers.config_manager import create_config_manager  # noqa: E402
from src.managers.logging_config_manager import create_logging_config_manager  # noqa: E402
from src.models.enums import Orthography  # noqa: E402
from src.models.learning import RunConfig  # noqa: E402

# =============================================================================
# Module Info
# =============================================================================

__version__ = "v1.0-5-5.3-1"


# =============================================================================
# Argument Parsing
# =============================================================================


def _items(value: str) -> List[str]:
    items = [item.strip() for item in value.split(",") if item.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list of entry keys")
    return items


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog="numg",
        description="Numeral-MG - minimalist grammar workbench for numerals",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Learn the first twelve numerals
  python main.py train --max 12

  # Derive thirteen from three entries, printing every rule application
  python main.py derive --lexicon lexicon.txt --items eps,teen,thir --show-steps
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="Log level override (DEBUG, INFO, WARNING, ...)")
    parser.add_argument("--environment", choices=["production", "testing", "development"])
    parser.add_argument("--config-dir", type=Path, help="Configuration directory (default: src/config)")

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    train = subparsers.add_parser("train", help="Learn a lexicon from the counting teacher")
    train.add_argument("--max", dest="max_number", type=int, help="Count up to this number (1..99)")
    train.add_argument("--orthography", choices=[o.value for o in Orthography])
    train.add_argument("--max-leaves", type=int, help="Leaf bound for the round-trip check")
    train.add_argument("--lexicon", type=Path, default=Path("lexicon.txt"), help="Lexicon output file")
    train.add_argument("--trace", type=Path, default=Path("trace.jsonl"), help="JSONL trace output file")

    generate = subparsers.add_parser("generate", help="Exponents for a number")
    generate.add_argument("--lexicon", type=Path, required=True)
    generate.add_argument("--value", type=int, required=True)
    generate.add_argument("--max-leaves", type=int)

    parse = subparsers.add_parser(
        "parse",
        help="Meanings of an utterance",
        description="Print one line per meaning: the term, a tab, then its value ('?' when it is not a number).",
    )
    parse.add_argument("--lexicon", type=Path, required=True)
    parse.add_argument("--utterance", required=True)
    parse.add_argument("--max-leaves", type=int)

    derive = subparsers.add_parser("derive", help="Replay a derivation from entry keys")
    derive.add_argument("--lexicon", type=Path, required=True)
    derive.add_argument("--items", type=_items, required=True, help="exponent or exponent#i, comma separated")
    derive.add_argument("--show-steps", action="store_true", help="Print every rule application")

    show = subparsers.add_parser("lexicon-show", help="Print a lexicon file canonically")
    show.add_argument("--lexicon", type=Path, required=True)

    return parser


# =============================================================================
# Entry Point
# =============================================================================


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, wire managers and dispatch; returns the exit code."""
    args = build_parser().parse_args(argv)

    config_manager = create_config_manager(config_dir=args.config_dir, environment=args.environment)
    logging_manager = create_logging_config_manager(config_manager, log_level=args.log_level)
    logging_manager.get_logger("main").debug(
        f"⚙️ {config_manager.get_environment()} configuration: {config_manager.to_dict()}"
    )

    try:
        run_config = RunConfig.from_config(
            config_manager,
            max_number=getattr(args, "max_number", None),
            orthography=getattr(args, "orthography", None),
            max_leaves=getattr(args, "max_leaves", None),
        )
    except ValidationError as e:
        print(f"error: invalid settings: {e}", file=sys.stderr)
        return ExitCode.NO_RESULT

    if args.command == "train":
        return cmd_train(run_config, args.lexicon, args.trace, logging_manager)
    if args.command == "generate":
        return cmd_generate(run_config, args.lexicon, args.value, logging_manager)
    if args.command == "parse":
        return cmd_parse(run_config, args.lexicon, args.utterance, logging_manager)
    if args.command == "derive":
        return cmd_derive(run_config, args.lexicon, args.items, args.show_steps, logging_manager)
    return cmd_lexicon_show(args.lexicon, logging_manager)


if __name__ == "__main__":
    sys.exit(int(main()))
