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
Learning Models - Utterance-meaning pairs, feedback, trace events, run config
----------------------------------------------------------------------------
FILE VERSION: v1.0-4-4.1-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 4 - Teacher & Learner
CLEAN ARCHITECTURE: Compliant
============================================================================

MODELS:
- UMP: utterance-meaning pair ⟨exponent, semantics⟩ emitted by the teacher
- Feedback: Reward or Punish (with the rejected exponent)
- Affix: a morpheme the learner has segmented out, with its meaning context
- TraceEvent: one auditable learner event (in-memory, carries signs)
- TraceRecord / UMPRecord: the JSON line form of a trace event
- RunConfig: validated settings for a training or query run
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.models.enums import AffixSide, Orthography, TraceEventKind, Verdict
from src.models.grammar import Sign
from src.models.terms import Lam, Term

# Module version
__version__ = "v1.0-4-4.1-1"


# =============================================================================
# Teacher Vocabulary
# =============================================================================


@dataclass(frozen=True)
class UMP:
    """Utterance-meaning pair."""

    exponent: str
    semantics: Term

    def __str__(self) -> str:
        return f"⟨{self.exponent}, {self.semantics}⟩"


@dataclass(frozen=True)
class Feedback:
    """Teacher verdict on one produced exponent."""

    verdict: Verdict
    offending: Optional[str] = None

    @classmethod
    def reward(cls) -> "Feedback":
        return cls(Verdict.REWARD)

    @classmethod
    def punish(cls, exponent: str) -> "Feedback":
        return cls(Verdict.PUNISH, exponent)

    @property
    def is_reward(self) -> bool:
        return self.verdict is Verdict.REWARD

    def __str__(self) -> str:
        if self.is_reward:
            return str(self.verdict)
        return f"{self.verdict}({self.offending})"


# =============================================================================
# Learner Vocabulary
# =============================================================================


@dataclass(frozen=True)
class Affix:
    """
    A learned morpheme.

    Attributes:
        exponent: Surface form of the morpheme ("teen", "ty", "twenty")
        side: Whether it follows (suffix) or precedes (prefix) its argument
        context: One-hole meaning context λx.C[x]
    """

    exponent: str
    side: AffixSide
    context: Lam


@dataclass(frozen=True)
class TraceEvent:
    """
    One learner event.

    Lexicon-changing events list removals and additions; applying them
    (removals first, additions appended) is the only way a lexicon changes.
    """

    t: int
    kind: TraceEventKind
    added: Tuple[Sign, ...] = ()
    removed: Tuple[Sign, ...] = ()
    ump: Optional[UMP] = None
    offending: Optional[str] = None

    @property
    def changes_lexicon(self) -> bool:
        return self.kind.changes_lexicon and bool(self.added or self.removed)


def apply_event(lexicon: Sequence[Sign], event: TraceEvent) -> Tuple[Sign, ...]:
    """Remove the event's removed entries, then append its added ones."""
    if not event.changes_lexicon:
        return tuple(lexicon)
    removed = set(event.removed)
    kept = tuple(sign for sign in lexicon if sign not in removed)
    return kept + tuple(event.added)


# =============================================================================
# Wire Format
# =============================================================================


class UMPRecord(BaseModel):
    """UMP as stored in a trace line."""

    exponent: str = Field(..., description="Surface exponent")
    term: str = Field(..., description="Canonical term text of the semantics")


class TraceRecord(BaseModel):
    """One JSON line of a training trace."""

    model_config = ConfigDict(extra="forbid")

    t: int = Field(..., ge=0, description="Learner clock when the event happened")
    kind: TraceEventKind = Field(..., description="Event kind")
    added: List[str] = Field(default_factory=list, description="Added entries in lexicon line format")
    removed: List[str] = Field(default_factory=list, description="Removed entries in lexicon line format")
    ump: Optional[UMPRecord] = Field(default=None, description="UMP being processed")
    offending: Optional[str] = Field(default=None, description="Exponent the teacher rejected")


# =============================================================================
# Run Configuration
# =============================================================================


class RunConfig(BaseModel):
    """
    Validated settings for one run.

    Built from the ConfigManager sections with CLI overrides on top.
    """

    model_config = ConfigDict(frozen=True)

    max_number: int = Field(default=99, ge=1, le=99, description="Count up to this number")
    orthography: Orthography = Field(default=Orthography.PAPER, description="Teacher spelling")
    substitutions: Dict[str, str] = Field(
        default_factory=lambda: {"fourty": "forty"},
        description="Spelling substitutions for the standard orthography",
    )
    max_leaves: int = Field(default=5, ge=1, description="Leaf bound for generate/parse queries")
    chart_cap: int = Field(default=100_000, ge=1, description="Chart item cap")
    reduction_budget: int = Field(default=10_000, ge=1, description="Beta reduction step budget")
    start_category: str = Field(default="num", min_length=1, description="Start category")
    learner_max_leaves: int = Field(default=3, ge=1, description="Leaf bound while reproducing UMPs")
    retry_cap: int = Field(default=5, ge=1, description="Reproduction attempts per UMP")
    min_affix_length: int = Field(default=2, ge=1, description="Shortest affix segmented out")
    min_stem_overlap: int = Field(default=2, ge=1, description="Residual/stem prefix overlap")
    licensee_stem: str = Field(default="k", min_length=1, description="Stem of fresh licensee ids")

    @classmethod
    def from_config(cls, config_manager, **overrides: Any) -> "RunConfig":
        """
        Build a RunConfig from config sections, then apply non-None overrides.

        Args:
            config_manager: ConfigManager instance
            **overrides: Field values (e.g. from CLI flags); None is ignored
        """
        teacher = config_manager.get_teacher_config()
        transducer = config_manager.get_transducer_config()
        learning = config_manager.get_learning_config()

        values: Dict[str, Any] = {
            "max_number": teacher.get("max_number"),
            "orthography": teacher.get("orthography"),
            "substitutions": teacher.get("substitutions"),
            "max_leaves": transducer.get("max_leaves"),
            "chart_cap": transducer.get("chart_cap"),
            "reduction_budget": transducer.get("reduction_budget"),
            "start_category": transducer.get("start_category"),
            "learner_max_leaves": learning.get("max_leaves"),
            "retry_cap": learning.get("retry_cap"),
            "min_affix_length": learning.get("min_affix_length"),
            "min_stem_overlap": learning.get("min_stem_overlap"),
            "licensee_stem": learning.get("licensee_stem"),
        }
        values.update(overrides)
        return cls(**{key: value for key, value in values.items() if value is not None})


__all__ = [
    "UMP",
    "Feedback",
    "Affix",
    "TraceEvent",
    "apply_event",
    "UMPRecord",
    "TraceRecord",
    "RunConfig",
]
