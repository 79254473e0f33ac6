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
Grammar Models - Features, syntactic types, signs and expressions
----------------------------------------------------------------------------
FILE VERSION: v1.0-2-2.2-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 2 - Grammar Kernel
CLEAN ARCHITECTURE: Compliant
============================================================================

MODELS:
- Feature: one syntactic feature (num, =num, +k, -k)
- SynType: category (:: or :) plus an ordered feature list
- Sign: exponent, syntactic type and semantic term
- Expression: head sign followed by pending chain signs

Models are immutable and do not validate themselves; well-formedness is
checked by src.services.grammar_engine so that invalid types can still be
represented and reported.

USAGE:
    from src.models.grammar import Sign, SynType

    thir = Sign("thir", SynType.parse(":: num -k"), NumLit(3))
    print(thir)     # ⟨thir, :: num -k, 3⟩
"""

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

from src.models.enums import Category, FeatureKind, feature_kind_from_token
from src.models.terms import Term
from src.utils.errors import InvalidSynTypeError

__version__ = "v1.0-2-2.2-1"

# Rendering of the empty exponent
EPSILON = "ε"


# =============================================================================
# Feature
# =============================================================================


@dataclass(frozen=True)
class Feature:
    """A syntactic feature: kind plus identifier."""

    kind: FeatureKind
    ident: str

    def __post_init__(self) -> None:
        if not self.ident:
            raise InvalidSynTypeError("feature identifier must be non-empty")

    def __str__(self) -> str:
        return f"{self.kind.marker}{self.ident}"

    @classmethod
    def parse(cls, token: str) -> "Feature":
        """Parse a feature token such as '=num' or '-k2'."""
        try:
            kind, ident = feature_kind_from_token(token)
        except ValueError as e:
            raise InvalidSynTypeError(str(e)) from e
        return cls(kind, ident)

    @classmethod
    def base(cls, ident: str) -> "Feature":
        return cls(FeatureKind.BASE, ident)

    @classmethod
    def selector(cls, ident: str) -> "Feature":
        return cls(FeatureKind.SELECTOR, ident)

    @classmethod
    def licensor(cls, ident: str) -> "Feature":
        return cls(FeatureKind.LICENSOR, ident)

    @classmethod
    def licensee(cls, ident: str) -> "Feature":
        return cls(FeatureKind.LICENSEE, ident)


# =============================================================================
# Syntactic Type
# =============================================================================


@dataclass(frozen=True)
class SynType:
    """Category and ordered feature list."""

    category: Category
    features: Tuple[Feature, ...]

    def __str__(self) -> str:
        return " ".join([str(self.category)] + [str(f) for f in self.features])

    @property
    def first(self) -> Optional[Feature]:
        """The next feature to be checked, if any."""
        return self.features[0] if self.features else None

    @classmethod
    def of(cls, category: Category, features: Sequence[Feature]) -> "SynType":
        return cls(Category(category), tuple(features))

    @classmethod
    def parse(cls, text: str) -> "SynType":
        """
        Parse ':: =num =num +k num' style text.

        Raises:
            InvalidSynTypeError: On an unknown category or feature token
        """
        tokens = text.split()
        if not tokens:
            raise InvalidSynTypeError("empty syntactic type")
        try:
            category = Category(tokens[0])
        except ValueError as e:
            raise InvalidSynTypeError(f"unknown category '{tokens[0]}'") from e
        return cls(category, tuple(Feature.parse(token) for token in tokens[1:]))


# =============================================================================
# Sign
# =============================================================================


@dataclass(frozen=True)
class Sign:
    """
    Linguistic sign ⟨exponent, syntactic type, semantics⟩.

    Attributes:
        exponent: Surface string, possibly empty (ε)
        syntype: Category and features
        semantics: Lambda term
    """

    exponent: str
    syntype: SynType
    semantics: Term

    @property
    def category(self) -> Category:
        return self.syntype.category

    @property
    def features(self) -> Tuple[Feature, ...]:
        return self.syntype.features

    @property
    def display_exponent(self) -> str:
        return self.exponent or EPSILON

    def with_features(self, features: Sequence[Feature], category: Optional[Category] = None) -> "Sign":
        """Copy with a new feature list (and optionally category)."""
        return replace(self, syntype=SynType(category or self.category, tuple(features)))

    def __str__(self) -> str:
        return f"⟨{self.display_exponent}, {self.syntype}, {self.semantics}⟩"


# =============================================================================
# Expression
# =============================================================================


@dataclass(frozen=True)
class Expression:
    """Head sign (index 0) followed by pending chain signs."""

    signs: Tuple[Sign, ...]

    def __post_init__(self) -> None:
        if not self.signs:
            raise ValueError("an expression needs at least one sign")

    @classmethod
    def lexical(cls, sign: Sign) -> "Expression":
        return cls((sign,))

    @property
    def head(self) -> Sign:
        return self.signs[0]

    @property
    def chains(self) -> Tuple[Sign, ...]:
        return self.signs[1:]

    @property
    def feature_count(self) -> int:
        return sum(len(sign.features) for sign in self.signs)

    def __str__(self) -> str:
        return ", ".join(str(sign) for sign in self.signs)


__all__ = [
    "EPSILON",
    "Feature",
    "SynType",
    "Sign",
    "Expression",
]
