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
Lexicon Repository - Lexicon files, JSONL traces and trace replay
----------------------------------------------------------------------------
FILE VERSION: v1.0-5-5.1-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 5 - Persistence & CLI
CLEAN ARCHITECTURE: Compliant (Rule #1 Factory, Rule #2 DI)
============================================================================

RESPONSIBILITIES:
- Encode/decode lexicon lines:  exponent SP cat SP features SP ; SP term
  (the empty exponent is written @eps)
- Read/write lexicon files (UTF-8, one entry per line)
- Read/write training traces (one JSON object per line)
- Replay a trace from the empty lexicon
- Resolve derive item keys (exponent or exponent#i)

FILE FORMATS:
    thir :: num -k ; 3
    @eps :: =num =num +k num ; (lam y (lam x (add y x)))

    {"t": 14, "kind": "SegmentationRevision", "added": [...], "removed": [...],
     "ump": {"exponent": "fourteen", "term": "(add (mul 10^1 1) 4)"}, "offending": null}

USAGE:
    repository = create_lexicon_repository(logging_manager)

    lexicon = repository.read_lexicon(Path("lexicon.txt"))
    replayed = repository.replay(repository.read_trace(Path("trace.jsonl")))
"""

import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from src.models.enums import TraceEventKind
from src.models.grammar import Sign, SynType
from src.models.learning import UMP, TraceEvent, TraceRecord, UMPRecord, apply_event
from src.services.grammar_engine import validate_syntype
from src.services.term_algebra import format_term, parse_term
from src.utils.errors import (
    AmbiguousEntryKeyError,
    InvalidSynTypeError,
    LexiconFormatError,
    TermSyntaxError,
    UnknownEntryKeyError,
)

# Module version
__version__ = "v1.0-5-5.1-1"

# Initialize logger
logger = logging.getLogger(__name__)

# Written in place of the empty exponent
EPSILON_TOKEN = "@eps"

# Separator between the syntactic part and the term
TERM_SEPARATOR = " ; "


# =============================================================================
# Lexicon Line Codec
# =============================================================================


def format_entry(sign: Sign) -> str:
    """Render one lexicon line."""
    exponent = sign.exponent or EPSILON_TOKEN
    return f"{exponent} {sign.syntype}{TERM_SEPARATOR}{format_term(sign.semantics)}"


def parse_entry(line: str, line_number: Optional[int] = None) -> Sign:
    """
    Decode one lexicon line.

    Raises:
        LexiconFormatError: On a malformed line, an invalid type or bad term text
    """
    head, separator, term_text = line.strip().partition(TERM_SEPARATOR.strip())
    if not separator:
        raise LexiconFormatError("missing ';' between type and term", line_number)

    tokens = head.split()
    if len(tokens) < 3:
        raise LexiconFormatError("expected exponent, category and at least one feature", line_number)

    exponent = "" if tokens[0] == EPSILON_TOKEN else tokens[0]
    try:
        syntype = SynType.parse(" ".join(tokens[1:]))
    except InvalidSynTypeError as e:
        raise LexiconFormatError(str(e), line_number) from e
    if not validate_syntype(syntype):
        raise LexiconFormatError(f"ill-formed syntactic type '{syntype}'", line_number)

    try:
        semantics = parse_term(term_text.strip())
    except TermSyntaxError as e:
        raise LexiconFormatError(f"term: {e}", line_number) from e

    return Sign(exponent, syntype, semantics)


def format_lexicon(lexicon: Iterable[Sign]) -> str:
    """Canonical serialization: one line per entry, newline terminated."""
    return "".join(f"{format_entry(sign)}\n" for sign in lexicon)


def parse_lexicon(text: str) -> Tuple[Sign, ...]:
    """Decode a lexicon file body; blank lines and '#' comments are skipped."""
    entries: List[Sign] = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        entries.append(parse_entry(stripped, number))
    return tuple(entries)


# =============================================================================
# Trace Codec
# =============================================================================


def event_to_record(event: TraceEvent) -> TraceRecord:
    """Map an in-memory event to its JSON record."""
    ump = None
    if event.ump is not None:
        ump = UMPRecord(exponent=event.ump.exponent, term=format_term(event.ump.semantics))
    return TraceRecord(
        t=event.t,
        kind=event.kind,
        added=[format_entry(sign) for sign in event.added],
        removed=[format_entry(sign) for sign in event.removed],
        ump=ump,
        offending=event.offending,
    )


def record_to_event(record: TraceRecord, line_number: Optional[int] = None) -> TraceEvent:
    """
    Map a JSON record back to an event.

    Raises:
        LexiconFormatError: If a Reward or Punish record carries entries
    """
    kind = TraceEventKind(record.kind)
    if not kind.changes_lexicon and (record.added or record.removed):
        raise LexiconFormatError(f"{kind} events never change the lexicon", line_number)
    ump = None
    if record.ump is not None:
        try:
            ump = UMP(record.ump.exponent, parse_term(record.ump.term))
        except TermSyntaxError as e:
            raise LexiconFormatError(f"trace ump term: {e}", line_number) from e
    return TraceEvent(
        t=record.t,
        kind=kind,
        added=tuple(parse_entry(line, line_number) for line in record.added),
        removed=tuple(parse_entry(line, line_number) for line in record.removed),
        ump=ump,
        offending=record.offending,
    )


def replay_events(events: Iterable[TraceEvent]) -> Tuple[Sign, ...]:
    """Fold the events over the empty lexicon."""
    lexicon: Tuple[Sign, ...] = ()
    for event in events:
        lexicon = apply_event(lexicon, event)
    return lexicon


# =============================================================================
# Entry Keys
# =============================================================================


def resolve_entry_keys(lexicon: Sequence[Sign], keys: Sequence[str]) -> List[Sign]:
    """
    Resolve derive item keys against a lexicon.

    A key is an exponent (unique in the lexicon) or exponent#i, the i-th
    entry with that exponent in file order (1-based). '@eps' and 'eps'
    name the empty exponent.

    Raises:
        UnknownEntryKeyError: If a key names no entry
        AmbiguousEntryKeyError: If a plain key names several entries
    """
    resolved: List[Sign] = []
    exponents = {sign.exponent for sign in lexicon}
    for key in keys:
        name, _, ordinal = key.partition("#")
        if name == EPSILON_TOKEN or (name == "eps" and "eps" not in exponents):
            name = ""
        matches = [sign for sign in lexicon if sign.exponent == name]
        if ordinal:
            if not ordinal.isdigit() or not 1 <= int(ordinal) <= len(matches):
                raise UnknownEntryKeyError(f"no entry '{key}'")
            resolved.append(matches[int(ordinal) - 1])
            continue
        if not matches:
            raise UnknownEntryKeyError(f"no entry '{key}'")
        if len(matches) > 1:
            raise AmbiguousEntryKeyError(
                f"'{key}' matches {len(matches)} entries; use {key}#1 .. {key}#{len(matches)}"
            )
        resolved.append(matches[0])
    return resolved


# =============================================================================
# Repository
# =============================================================================


class LexiconRepository:
    """
    File access for lexicons and traces.

    Attributes:
        _logger: Structured logger
        _encoding: File encoding (UTF-8)
    """

    def __init__(self, logging_manager=None, encoding: str = "utf-8"):
        """
        Initialize the repository (use create_lexicon_repository() instead).

        Args:
            logging_manager: Optional LoggingConfigManager
            encoding: File encoding
        """
        self._logger = logging_manager.get_logger("lexicon_repository") if logging_manager else logger
        self._encoding = encoding

    # =========================================================================
    # Lexicon Files
    # =========================================================================

    def read_lexicon(self, path: Path) -> Tuple[Sign, ...]:
        """
        Load a lexicon file.

        Raises:
            LexiconFormatError: On any malformed line
            OSError: If the file cannot be read
        """
        lexicon = parse_lexicon(Path(path).read_text(encoding=self._encoding))
        self._logger.debug(f"📂 Loaded {len(lexicon)} entries from {path}")
        return lexicon

    def write_lexicon(self, path: Path, lexicon: Iterable[Sign]) -> None:
        """Write a lexicon file in canonical form."""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(format_lexicon(lexicon), encoding=self._encoding)
        self._logger.debug(f"💾 Wrote lexicon to {target}")

    # =========================================================================
    # Trace Files
    # =========================================================================

    def write_trace(self, path: Path, events: Iterable[TraceEvent]) -> int:
        """Write one JSON object per event; returns the number of lines."""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        count = 0
        with target.open("w", encoding=self._encoding) as handle:
            for event in events:
                handle.write(event_to_record(event).model_dump_json() + "\n")
                count += 1
        self._logger.debug(f"💾 Wrote {count} trace events to {target}")
        return count

    def read_trace(self, path: Path) -> List[TraceEvent]:
        """
        Load a JSONL trace.

        Raises:
            LexiconFormatError: On an invalid JSON line or record
        """
        events: List[TraceEvent] = []
        text = Path(path).read_text(encoding=self._encoding)
        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                record = TraceRecord.model_validate(json.loads(line))
            except (json.JSONDecodeError, ValidationError) as e:
                raise LexiconFormatError(f"invalid trace record: {e}", number) from e
            events.append(record_to_event(record, number))
        self._logger.debug(f"📂 Loaded {len(events)} trace events from {path}")
        return events

    def replay(self, events: Iterable[TraceEvent]) -> Tuple[Sign, ...]:
        """Reconstruct the lexicon a trace describes."""
        return replay_events(events)


# =============================================================================
# Factory Function
# =============================================================================


def create_lexicon_repository(logging_manager=None) -> LexiconRepository:
    """
    Factory function to create a LexiconRepository.

    Following Clean Architecture v5.2 Rule #1: Factory Functions.

    Args:
        logging_manager: Optional LoggingConfigManager

    Returns:
        LexiconRepository instance
    """
    return LexiconRepository(logging_manager=logging_manager)


__all__ = [
    "EPSILON_TOKEN",
    "format_entry",
    "parse_entry",
    "format_lexicon",
    "parse_lexicon",
    "event_to_record",
    "record_to_event",
    "replay_events",
    "resolve_entry_keys",
    "LexiconRepository",
    "create_lexicon_repository",
]
