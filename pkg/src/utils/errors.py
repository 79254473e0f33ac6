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
Errors - Exception hierarchy for the workbench
----------------------------------------------------------------------------
FILE VERSION: v1.0-1-1.2-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 1 - Term Algebra & Grammar Kernel
CLEAN ARCHITECTURE: Compliant
============================================================================

Conditions that the operations report as *results* (no common pattern,
not factorable, empty generation) are never raised. Everything below is a
genuine failure of a precondition or a resource bound.

USAGE:
    from src.utils.errors import NonTerminationError, SMCViolationError

    try:
        normal = beta_reduce(term)
    except NonTerminationError as e:
        logger.error(f"❌ {e}")
"""

from typing import Any, List, Optional

# Module version
__version__ = "v1.0-1-1.2-1"


# =============================================================================
# Base
# =============================================================================


class NumeralWorkbenchError(Exception):
    """Base exception for every workbench failure."""

    pass


# =============================================================================
# Term algebra
# =============================================================================


class TermError(NumeralWorkbenchError):
    """Base exception for term algebra failures."""

    pass


class TermSyntaxError(TermError):
    """Raised when term text does not follow the term grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IllFormedTermError(TermError):
    """Raised when a term has an unbound variable where a closed term is required."""

    pass


class NonTerminationError(TermError):
    """Raised when beta reduction exceeds its step budget."""

    def __init__(self, budget: int):
        super().__init__(f"beta reduction exceeded {budget} steps")
        self.budget = budget


class NotANumberError(TermError):
    """Raised when a term still contains lambdas or variables after reduction."""

    pass


class NoAbstractionError(TermError):
    """Raised when anti-unification is asked to generalise two identical terms."""

    pass


# =============================================================================
# Grammar kernel
# =============================================================================


class GrammarError(NumeralWorkbenchError):
    """Base exception for minimalist grammar failures."""

    pass


class InvalidSynTypeError(GrammarError):
    """Raised when a feature string violates (=f|+f)* f (-f)*."""

    pass


class NotApplicableError(GrammarError):
    """Raised when merge or move preconditions do not hold."""

    pass


class SMCViolationError(GrammarError):
    """Raised when two pending chains would share a leading licensee."""

    def __init__(self, licensee: str):
        super().__init__(f"shortest movement constraint violated for -{licensee}")
        self.licensee = licensee


# =============================================================================
# Transducer
# =============================================================================


class TransducerError(NumeralWorkbenchError):
    """Base exception for utterance-meaning transducer failures."""

    pass


class ChartLimitError(TransducerError):
    """Raised when the derivation chart grows past its configured cap."""

    def __init__(self, cap: int):
        super().__init__(f"chart exceeded {cap} items")
        self.cap = cap


# =============================================================================
# Teacher / Learner
# =============================================================================


class TeacherError(NumeralWorkbenchError):
    """Base exception for teacher failures."""

    pass


class NumberOutOfRangeError(TeacherError):
    """Raised when the teacher is asked for a number it cannot name."""

    pass


class LearnerError(NumeralWorkbenchError):
    """Base exception for learner failures."""

    pass


class UnresolvablePunishError(LearnerError):
    """Raised when a punishment cannot be traced to a restrictable argument slot."""

    pass


class LearningStuckError(LearnerError):
    """
    Raised when reproduction keeps failing after the retry cap.

    Attributes:
        ump: The utterance-meaning pair that could not be reproduced
        trace: Trace events recorded up to the failure
    """

    def __init__(self, message: str, ump: Any = None, trace: Optional[List[Any]] = None):
        super().__init__(message)
        self.ump = ump
        self.trace = list(trace or [])


# =============================================================================
# Lexicon files
# =============================================================================


class LexiconFormatError(NumeralWorkbenchError):
    """Raised when a lexicon file line cannot be decoded."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number


class UnknownEntryKeyError(LexiconFormatError):
    """Raised when a derive item key names no lexicon entry."""

    pass


class AmbiguousEntryKeyError(LexiconFormatError):
    """Raised when a derive item key matches several lexicon entries."""

    pass


# =============================================================================
# Export public interface
# =============================================================================

__all__ = [
    "NumeralWorkbenchError",
    "TermError",
    "TermSyntaxError",
    "IllFormedTermError",
    "NonTerminationError",
    "NotANumberError",
    "NoAbstractionError",
    "GrammarError",
    "InvalidSynTypeError",
    "NotApplicableError",
    "SMCViolationError",
    "TransducerError",
    "ChartLimitError",
    "TeacherError",
    "NumberOutOfRangeError",
    "LearnerError",
    "UnresolvablePunishError",
    "LearningStuckError",
    "LexiconFormatError",
    "UnknownEntryKeyError",
    "AmbiguousEntryKeyError",
]
