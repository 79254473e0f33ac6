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
CLI Commands - train, generate, parse, derive, lexicon-show
----------------------------------------------------------------------------
FILE VERSION: v1.0-5-5.2-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 5 - Persistence & CLI
CLEAN ARCHITECTURE: Compliant (Rule #2 DI)
============================================================================

Each command takes its collaborators as arguments, writes line-oriented
results to `out` (stdout by default) and returns an ExitCode. Problems are
reported on stderr and through logging; stdout carries results only.

EXIT CODES:
    0  OK
    1  NO_RESULT        (nothing generated/parsed, incomplete derivation)
    2  LEARNING_STUCK   (training did not converge)
    3  BAD_LEXICON      (unreadable or malformed lexicon file)
    4  BAD_ENTRY_KEY    (ambiguous or unknown derive item key)
"""

import logging
import sys
from collections import Counter
from enum import IntEnum
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple

from src.models.enums import Category, FeatureKind
from src.models.grammar import Sign
from src.models.learning import RunConfig
from src.repositories.lexicon_repository import (
    LexiconRepository,
    create_lexicon_repository,
    format_lexicon,
    replay_events,
    resolve_entry_keys,
)
from src.services.learner_service import create_numeral_learner
from src.services.teacher_service import canonical_term
from src.services.term_algebra import evaluate, format_term
from src.services.transducer import create_transducer
from src.utils.errors import (
    AmbiguousEntryKeyError,
    ChartLimitError,
    LearningStuckError,
    LexiconFormatError,
    NotANumberError,
    NumberOutOfRangeError,
    UnknownEntryKeyError,
)

# Module version
__version__ = "v1.0-5-5.2-1"

# Initialize logger
logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Process exit statuses."""

    OK = 0
    NO_RESULT = 1
    LEARNING_STUCK = 2
    BAD_LEXICON = 3
    BAD_ENTRY_KEY = 4


# =============================================================================
# Helpers
# =============================================================================


def _emit(out: Optional[TextIO], line: str = "") -> None:
    print(line, file=out or sys.stdout)


def _report(message: str) -> None:
    print(message, file=sys.stderr)


def licensee_ids(lexicon: Sequence[Sign]) -> List[str]:
    """Licensee identifiers in order of first appearance."""
    seen: List[str] = []
    for sign in lexicon:
        for feature in sign.features:
            if feature.kind is FeatureKind.LICENSEE and feature.ident not in seen:
                seen.append(feature.ident)
    return seen


def _logger_for(logging_manager) -> logging.Logger:
    return logging_manager.get_logger("cli") if logging_manager else logger


def _load(
    repository: LexiconRepository, lexicon_path: Path, log: logging.Logger
) -> Tuple[Optional[Tuple[Sign, ...]], Optional[ExitCode]]:
    """Read a lexicon file, mapping failures to BAD_LEXICON."""
    try:
        return repository.read_lexicon(lexicon_path), None
    except (LexiconFormatError, OSError) as e:
        log.error(f"❌ Cannot load lexicon {lexicon_path}: {e}")
        _report(f"error: {lexicon_path}: {e}")
        return None, ExitCode.BAD_LEXICON


# =============================================================================
# Commands
# =============================================================================


def cmd_train(
    run_config: RunConfig,
    lexicon_out: Path,
    trace_out: Path,
    logging_manager=None,
    out: Optional[TextIO] = None,
) -> ExitCode:
    """
    Train a learner on 1..max_number and write the lexicon and trace.

    Prints entries, events, round-trip accuracy and the licensee ids of
    the final lexicon. A stuck run still writes the trace up to the failure.
    """
    log = _logger_for(logging_manager)
    repository = create_lexicon_repository(logging_manager)
    learner = create_numeral_learner(run_config=run_config, logging_manager=logging_manager)
    max_n = run_config.max_number

    try:
        lexicon, events = learner.train(max_n)
    except LearningStuckError as e:
        log.error(f"❌ Learning stuck: {e}")
        if e.trace:
            repository.write_trace(trace_out, e.trace)
            repository.write_lexicon(lexicon_out, replay_events(e.trace))
        _report(f"error: learning stuck: {e}")
        return ExitCode.LEARNING_STUCK

    repository.write_lexicon(lexicon_out, lexicon)
    repository.write_trace(trace_out, events)

    try:
        failures = learner.round_trip_failures(lexicon, max_n)
    except ChartLimitError as e:
        log.error(f"❌ Round-trip check aborted: {e}")
        _report(f"error: {e}")
        return ExitCode.LEARNING_STUCK

    passed = max_n - len(failures)
    licensees = licensee_ids(lexicon)

    _emit(out, f"entries: {len(lexicon)}")
    _emit(out, f"events: {len(events)}")
    _emit(out, f"round-trip accuracy: {passed / max_n:.3f} ({passed}/{max_n})")
    _emit(out, f"licensees: {' '.join(licensees) if licensees else '(none)'}")

    if failures:
        _report(f"error: numbers failing the round trip: {' '.join(map(str, failures))}")
        return ExitCode.LEARNING_STUCK
    return ExitCode.OK


def cmd_generate(
    run_config: RunConfig,
    lexicon_path: Path,
    value: int,
    logging_manager=None,
    out: Optional[TextIO] = None,
) -> ExitCode:
    """Print every exponent the lexicon derives for the canonical meaning of value."""
    log = _logger_for(logging_manager)
    repository = create_lexicon_repository(logging_manager)
    lexicon, failure = _load(repository, lexicon_path, log)
    if failure is not None:
        return failure

    try:
        meaning = canonical_term(value)
    except NumberOutOfRangeError as e:
        _report(f"error: {e}")
        return ExitCode.NO_RESULT

    transducer = _transducer(run_config, logging_manager)
    try:
        exponents = transducer.generate(lexicon, meaning)
    except ChartLimitError as e:
        log.error(f"❌ {e}")
        _report(f"error: {e}")
        return ExitCode.NO_RESULT

    for exponent in exponents:
        _emit(out, exponent)
    return ExitCode.OK if exponents else ExitCode.NO_RESULT


def cmd_parse(
    run_config: RunConfig,
    lexicon_path: Path,
    utterance: str,
    logging_manager=None,
    out: Optional[TextIO] = None,
) -> ExitCode:
    """Print each meaning of the utterance as `<term>\\t<value>`."""
    log = _logger_for(logging_manager)
    repository = create_lexicon_repository(logging_manager)
    lexicon, failure = _load(repository, lexicon_path, log)
    if failure is not None:
        return failure

    if not utterance:
        _report("error: empty utterance")
        return ExitCode.NO_RESULT

    transducer = _transducer(run_config, logging_manager)
    try:
        meanings = transducer.parse(lexicon, utterance)
    except ChartLimitError as e:
        log.error(f"❌ {e}")
        _report(f"error: {e}")
        return ExitCode.NO_RESULT

    for meaning in meanings:
        try:
            value = str(evaluate(meaning, run_config.reduction_budget))
        except NotANumberError:
            value = "?"
        _emit(out, f"{format_term(meaning)}\t{value}")
    return ExitCode.OK if meanings else ExitCode.NO_RESULT


def cmd_derive(
    run_config: RunConfig,
    lexicon_path: Path,
    items: Sequence[str],
    show_steps: bool = False,
    logging_manager=None,
    out: Optional[TextIO] = None,
) -> ExitCode:
    """
    Replay the named entries left to right.

    With show_steps every rule application is printed as
    `<rule>: <premises> => <conclusion>`; the final expression is printed
    last in any case.
    """
    log = _logger_for(logging_manager)
    repository = create_lexicon_repository(logging_manager)
    lexicon, failure = _load(repository, lexicon_path, log)
    if failure is not None:
        return failure

    try:
        entries = resolve_entry_keys(lexicon, items)
    except (AmbiguousEntryKeyError, UnknownEntryKeyError) as e:
        _report(f"error: {e}")
        return ExitCode.BAD_ENTRY_KEY

    if not entries:
        _report("error: no items given")
        return ExitCode.NO_RESULT

    replay = _transducer(run_config, logging_manager).derive(entries)

    if show_steps:
        for step in replay.steps:
            _emit(out, str(step))
    _emit(out, str(replay.derivation.expression))

    if not replay.complete:
        last = replay.steps[-1].rule if replay.steps else "no step"
        _report(f"stuck after {last} ({replay.consumed} of {replay.total} items used)")
        return ExitCode.NO_RESULT
    return ExitCode.OK


def cmd_lexicon_show(
    lexicon_path: Path,
    logging_manager=None,
    out: Optional[TextIO] = None,
) -> ExitCode:
    """Print the lexicon in canonical form followed by a per-category summary."""
    log = _logger_for(logging_manager)
    repository = create_lexicon_repository(logging_manager)
    lexicon, failure = _load(repository, lexicon_path, log)
    if failure is not None:
        return failure

    (out or sys.stdout).write(format_lexicon(lexicon))
    counts = Counter(sign.category for sign in lexicon)
    summary = ", ".join(
        f"{counts[category]} {category.display_name} ({category})" for category in Category
    )
    _emit(out, f"# {len(lexicon)} entries: {summary}")
    licensees = licensee_ids(lexicon)
    _emit(out, f"# licensees: {' '.join(licensees) if licensees else '(none)'}")
    return ExitCode.OK


def _transducer(run_config: RunConfig, logging_manager):
    return create_transducer(
        logging_manager=logging_manager,
        max_leaves=run_config.max_leaves,
        chart_cap=run_config.chart_cap,
        reduction_budget=run_config.reduction_budget,
        start=run_config.start_category,
    )


__all__ = [
    "ExitCode",
    "licensee_ids",
    "cmd_train",
    "cmd_generate",
    "cmd_parse",
    "cmd_derive",
    "cmd_lexicon_show",
]
