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
Grammar Engine - merge, move, the shortest movement constraint and typing
----------------------------------------------------------------------------
FILE VERSION: v1.0-2-2.3-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 2 - Grammar Kernel
CLEAN ARCHITECTURE: Compliant
============================================================================

RESPONSIBILITIES:
- Type well-formedness: (=f | +f)* f (-f)*
- merge-1 / merge-2 / merge-3, dispatched on head category and remainder
- move-1 / move-2 with the shortest movement constraint (SMC)
- Completeness and stuck-expression checks for the transducer
- Structural keys for chart deduplication

Result semantics are App(σ₁, σ₂) reduced to beta-normal form, or the
unchanged head semantics for merge-3 and move-2.

USAGE:
    from src.services.grammar_engine import apply_merge, apply_move

    rule, result = apply_merge(teen_expr, thir_expr)   # (merge-2, ⟨thirteen, : num, ...⟩)
"""

import logging
import re
from typing import Dict, Optional, Sequence, Tuple

from src.models.enums import Category, FeatureKind, RuleName
from src.models.grammar import Expression, Feature, Sign, SynType
from src.models.terms import App
from src.services.term_algebra import DEFAULT_REDUCTION_BUDGET, alpha_key, beta_reduce
from src.utils.errors import NotApplicableError, SMCViolationError

# Module version
__version__ = "v1.0-2-2.3-1"

# Initialize logger
logger = logging.getLogger(__name__)

# =============================================================================
# Type Validation
# =============================================================================

# One letter per feature kind, matched against a regex
_KIND_LETTERS: Dict[FeatureKind, str] = {
    FeatureKind.SELECTOR: "s",
    FeatureKind.LICENSOR: "p",
    FeatureKind.BASE: "b",
    FeatureKind.LICENSEE: "m",
}

_SYNTYPE_PATTERN = re.compile(r"^[sp]*bm*$")
_CHAIN_PATTERN = re.compile(r"^m+$")

# Default start category
START_CATEGORY = "num"


def _kind_string(features: Sequence[Feature]) -> str:
    return "".join(_KIND_LETTERS[f.kind] for f in features)


def validate_syntype(syntype: SynType) -> bool:
    """
    True iff the feature list matches (Selector|Licensor)* Base Licensee*.

    Examples:
        ':: =num =num +k num' → True
        ':: num -k'           → True
        ':: -k num'           → False
    """
    return bool(_SYNTYPE_PATTERN.match(_kind_string(syntype.features)))


def is_well_formed(expression: Expression) -> bool:
    """
    Structural invariant for engine outputs.

    The head (when it still has features) follows the type pattern or is
    fully checked; every chain sign holds a non-empty licensee tail; no two
    chains share a leading licensee.
    """
    head = expression.head
    if head.features and not validate_syntype(head.syntype):
        return False
    for chain in expression.chains:
        if not _CHAIN_PATTERN.match(_kind_string(chain.features)):
            return False
    return _smc_conflict(expression.chains) is None


# =============================================================================
# Shortest Movement Constraint
# =============================================================================


def _smc_conflict(chains: Sequence[Sign]) -> Optional[str]:
    """Return a licensee shared by two chains' first features, if any."""
    seen = set()
    for chain in chains:
        first = chain.syntype.first
        if first is None or first.kind is not FeatureKind.LICENSEE:
            continue
        if first.ident in seen:
            return first.ident
        seen.add(first.ident)
    return None


def _check_smc(chains: Sequence[Sign]) -> None:
    conflict = _smc_conflict(chains)
    if conflict is not None:
        raise SMCViolationError(conflict)


# =============================================================================
# Merge
# =============================================================================


def _apply(function_sign: Sign, argument_sign: Sign, max_steps: int):
    return beta_reduce(App(function_sign.semantics, argument_sign.semantics), max_steps=max_steps)


def can_merge(e1: Expression, e2: Expression) -> bool:
    """Selector =f on e1's head meets base f on e2's head."""
    first1 = e1.head.syntype.first
    first2 = e2.head.syntype.first
    return (
        first1 is not None
        and first2 is not None
        and first1.kind is FeatureKind.SELECTOR
        and first2.kind is FeatureKind.BASE
        and first1.ident == first2.ident
    )


def apply_merge(
    e1: Expression,
    e2: Expression,
    max_steps: int = DEFAULT_REDUCTION_BUDGET,
) -> Tuple[RuleName, Expression]:
    """
    Merge e2 into e1.

    Dispatch:
        merge-1: e1 head lexical, e2 head has no features after f (e1·e2)
        merge-2: e1 head derived, e2 head has no features after f (e2·e1)
        merge-3: e2 head keeps features, so it becomes a pending chain

    Returns:
        Tuple of (rule applied, resulting expression)

    Raises:
        NotApplicableError: If selector and base do not match
        SMCViolationError: If two chains would share a leading licensee
    """
    if not can_merge(e1, e2):
        raise NotApplicableError(
            f"cannot merge {e1.head.syntype} with {e2.head.syntype}"
        )

    head1, head2 = e1.head, e2.head
    rest1 = head1.features[1:]
    rest2 = head2.features[1:]

    if rest2:
        rule = RuleName.MERGE_3
        head = head1.with_features(rest1, Category.DERIVED)
        moving = head2.with_features(rest2, Category.DERIVED)
        chains = e1.chains + (moving,) + e2.chains
    else:
        semantics = _apply(head1, head2, max_steps)
        if head1.category is Category.LEXICAL:
            rule = RuleName.MERGE_1
            exponent = head1.exponent + head2.exponent
        else:
            rule = RuleName.MERGE_2
            exponent = head2.exponent + head1.exponent
        head = Sign(exponent, SynType(Category.DERIVED, rest1), semantics)
        chains = e1.chains + e2.chains

    _check_smc(chains)
    return rule, Expression((head,) + chains)


def merge(e1: Expression, e2: Expression, max_steps: int = DEFAULT_REDUCTION_BUDGET) -> Expression:
    """Merge e2 into e1 and return only the resulting expression."""
    return apply_merge(e1, e2, max_steps)[1]


# =============================================================================
# Move
# =============================================================================


def _movers(expression: Expression, licensee: str) -> Tuple[int, ...]:
    return tuple(
        index
        for index, chain in enumerate(expression.chains, start=1)
        if chain.syntype.first == Feature.licensee(licensee)
    )


def can_move(expression: Expression) -> bool:
    """Head starts with +f and exactly one chain starts with -f."""
    first = expression.head.syntype.first
    if first is None or first.kind is not FeatureKind.LICENSOR:
        return False
    return len(_movers(expression, first.ident)) == 1


def apply_move(
    expression: Expression,
    max_steps: int = DEFAULT_REDUCTION_BUDGET,
) -> Tuple[RuleName, Expression]:
    """
    Check the head's licensor against the unique matching chain.

    Dispatch:
        move-1: the chain is exactly [-f]; its exponent is prefixed to the
                head and its semantics is the head's argument
        move-2: the chain keeps further licensees and stays pending

    Raises:
        NotApplicableError: If the head has no licensor or no chain matches
        SMCViolationError: If several chains match, or move-2 would leave
                           two chains with the same leading licensee
    """
    head = expression.head
    first = head.syntype.first
    if first is None or first.kind is not FeatureKind.LICENSOR:
        raise NotApplicableError(f"head {head.syntype} does not start with a licensor")

    movers = _movers(expression, first.ident)
    if not movers:
        raise NotApplicableError(f"no pending chain carries -{first.ident}")
    if len(movers) > 1:
        raise SMCViolationError(first.ident)

    index = movers[0]
    mover = expression.signs[index]
    others = tuple(sign for position, sign in enumerate(expression.chains, start=1) if position != index)
    rest = head.features[1:]
    mover_rest = mover.features[1:]

    if not mover_rest:
        semantics = _apply(head, mover, max_steps)
        new_head = Sign(mover.exponent + head.exponent, SynType(Category.DERIVED, rest), semantics)
        return RuleName.MOVE_1, Expression((new_head,) + others)

    new_head = head.with_features(rest, Category.DERIVED)
    chains = tuple(
        mover.with_features(mover_rest) if position == index else sign
        for position, sign in enumerate(expression.chains, start=1)
    )
    _check_smc(chains)
    return RuleName.MOVE_2, Expression((new_head,) + chains)


def move(expression: Expression, max_steps: int = DEFAULT_REDUCTION_BUDGET) -> Expression:
    """Apply move and return only the resulting expression."""
    return apply_move(expression, max_steps)[1]


# =============================================================================
# Completion
# =============================================================================


def is_complete(expression: Expression, start: str = START_CATEGORY) -> bool:
    """True iff the expression is a single sign with features exactly [start]."""
    return len(expression.signs) == 1 and expression.head.features == (Feature.base(start),)


def is_stuck(expression: Expression) -> bool:
    """
    True when the head waits for a licensee no chain can supply.

    Such an expression can never complete (e.g. threeteen: +k num with no
    -k chain).
    """
    first = expression.head.syntype.first
    if first is None or first.kind is not FeatureKind.LICENSOR:
        return False
    return not _movers(expression, first.ident)


def expression_key(expression: Expression) -> tuple:
    """Hashable structural key: exponents, types and alpha keys of every sign."""
    return tuple(
        (sign.exponent, sign.category.value, tuple(str(f) for f in sign.features), alpha_key(sign.semantics))
        for sign in expression.signs
    )


__all__ = [
    "START_CATEGORY",
    "validate_syntype",
    "is_well_formed",
    "can_merge",
    "apply_merge",
    "merge",
    "can_move",
    "apply_move",
    "move",
    "is_complete",
    "is_stuck",
    "expression_key",
]
