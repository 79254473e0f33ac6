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
Enumerations - Closed vocabularies shared by all modules
----------------------------------------------------------------------------
FILE VERSION: v1.0-2-2.1-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 2 - Grammar Kernel
CLEAN ARCHITECTURE: Compliant
============================================================================

This module defines the small closed sets the workbench talks about:

    FeatureKind     → base num, selector =num, licensor +k, licensee -k
    Category        → lexical "::" and derived ":"
    RuleName        → merge-1 .. merge-3, move-1, move-2
    Verdict         → teacher reward / punish
    TraceEventKind  → auditable learner events
    Orthography     → paper spelling ("fourty") or standard ("forty")

USAGE:
    from src.models.enums import FeatureKind, feature_kind_from_token

    kind, ident = feature_kind_from_token("+k")   # (FeatureKind.LICENSOR, "k")
"""

from enum import Enum
from typing import Dict, Tuple

__version__ = "v1.0-2-2.1-1"


# =============================================================================
# Grammar Vocabulary
# =============================================================================

class FeatureKind(str, Enum):
    """
    The four kinds of syntactic feature.

    Each kind is rendered by prefixing its identifier with a marker:
        BASE num, SELECTOR =num, LICENSOR +k, LICENSEE -k
    """

    BASE = "base"
    SELECTOR = "selector"
    LICENSOR = "licensor"
    LICENSEE = "licensee"

    def __str__(self) -> str:
        return self.value

    @property
    def marker(self) -> str:
        """Token prefix for this kind."""
        return FEATURE_MARKERS[self]


# Token prefixes; base features carry none
FEATURE_MARKERS: Dict[FeatureKind, str] = {
    FeatureKind.BASE: "",
    FeatureKind.SELECTOR: "=",
    FeatureKind.LICENSOR: "+",
    FeatureKind.LICENSEE: "-",
}


class Category(str, Enum):
    """Lexical (simple) and derived (complex) categories."""

    LEXICAL = "::"
    DERIVED = ":"

    def __str__(self) -> str:
        return self.value

    @property
    def display_name(self) -> str:
        """Human-readable category name."""
        return "lexical" if self is Category.LEXICAL else "derived"


class RuleName(str, Enum):
    """The five structure-building inference rules."""

    MERGE_1 = "merge-1"
    MERGE_2 = "merge-2"
    MERGE_3 = "merge-3"
    MOVE_1 = "move-1"
    MOVE_2 = "move-2"

    def __str__(self) -> str:
        return self.value


# =============================================================================
# Term Algebra
# =============================================================================

class ReductionStrategy(str, Enum):
    """Beta reduction strategies; NORMAL is leftmost-outermost."""

    NORMAL = "normal"
    APPLICATIVE = "applicative"


# =============================================================================
# Learning Loop
# =============================================================================

class Verdict(str, Enum):
    """Teacher feedback verdicts."""

    REWARD = "Reward"
    PUNISH = "Punish"

    def __str__(self) -> str:
        return self.value


class TraceEventKind(str, Enum):
    """Kinds of learner trace events, written verbatim into the JSONL trace."""

    ROTE_ADD = "RoteAdd"
    SEGMENTATION_REVISION = "SegmentationRevision"
    REWARD = "Reward"
    PUNISH = "Punish"
    LICENSING_REORG = "LicensingReorg"
    SEMANTIC_REORG = "SemanticReorg"

    def __str__(self) -> str:
        return self.value

    @property
    def changes_lexicon(self) -> bool:
        """Whether events of this kind may carry added/removed entries."""
        return self not in (TraceEventKind.REWARD, TraceEventKind.PUNISH)


class AffixSide(str, Enum):
    """Where a learned morpheme attaches relative to its argument."""

    PREFIX = "prefix"
    SUFFIX = "suffix"


class Orthography(str, Enum):
    """Teacher spelling conventions."""

    PAPER = "paper"
    STANDARD = "standard"


# =============================================================================
# Token Resolution
# =============================================================================

def feature_kind_from_token(token: str) -> Tuple[FeatureKind, str]:
    """
    Split a feature token into its kind and identifier.

    Args:
        token: Feature token such as "num", "=num", "+k" or "-k2"

    Returns:
        Tuple of (FeatureKind, identifier)

    Raises:
        ValueError: If the identifier part is empty

    Examples:
        >>> feature_kind_from_token("=num")
        (FeatureKind.SELECTOR, 'num')

        >>> feature_kind_from_token("-k")
        (FeatureKind.LICENSEE, 'k')
    """
    for kind in (FeatureKind.SELECTOR, FeatureKind.LICENSOR, FeatureKind.LICENSEE):
        if token.startswith(kind.marker):
            ident = token[len(kind.marker):]
            break
    else:
        kind, ident = FeatureKind.BASE, token

    if not ident:
        raise ValueError(f"feature token '{token}' has no identifier")

    return kind, ident


__all__ = [
    "FeatureKind",
    "FEATURE_MARKERS",
    "Category",
    "RuleName",
    "ReductionStrategy",
    "Verdict",
    "TraceEventKind",
    "AffixSide",
    "Orthography",
    "feature_kind_from_token",
]
