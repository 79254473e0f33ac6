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
Teacher Service - Counting teacher for English numerals
----------------------------------------------------------------------------
FILE VERSION: v1.0-4-4.2-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 4 - Teacher & Learner
CLEAN ARCHITECTURE: Compliant (Rule #1 Factory, Rule #2 DI)
============================================================================

RESPONSIBILITIES:
- Emit the utterance-meaning stream u₁, u₂, … for 1..max_number
- Build canonical base-10 terms (1..9999)
- Judge produced exponents: Reward on exact match, Punish otherwise

ORTHOGRAPHY:
- paper:    concatenated forms with the spelling "fourty" (fourtytwo)
- standard: paper forms with the configured substitution table applied

USAGE:
    teacher = create_numeral_teacher(config_manager=config_manager)

    ump = teacher.ump_for(42)          # ⟨fourtytwo, (add (mul 10^1 4) 2)⟩
    teacher.judge(ump, ["fourtytwo"])  # [Reward]
"""

import logging
from typing import Dict, Iterator, List, Optional, Sequence

from src.models.enums import Orthography
from src.models.learning import UMP, Feedback
from src.models.terms import BASE, BasePow, NumLit, Term, add, mul
from src.utils.errors import NumberOutOfRangeError

# Module version
__version__ = "v1.0-4-4.2-1"

# Initialize logger
logger = logging.getLogger(__name__)

# =============================================================================
# Surface Forms
# =============================================================================

UNITS = ("one", "two", "three", "four", "five", "six", "seven", "eight", "nine")

TEENS = {
    10: "ten",
    11: "eleven",
    12: "twelve",
    13: "thirteen",
    14: "fourteen",
    15: "fifteen",
    16: "sixteen",
    17: "seventeen",
    18: "eighteen",
    19: "nineteen",
}

DECADES = {
    2: "twenty",
    3: "thirty",
    4: "fourty",
    5: "fifty",
    6: "sixty",
    7: "seventy",
    8: "eighty",
    9: "ninety",
}

# Largest number with a surface form
MAX_NAMED = 99

# Largest number with a canonical term
MAX_CANONICAL = 9999

DEFAULT_SUBSTITUTIONS: Dict[str, str] = {"fourty": "forty"}


def paper_exponent(n: int) -> str:
    """Concatenated surface form, e.g. 42 → 'fourtytwo'."""
    if not 1 <= n <= MAX_NAMED:
        raise NumberOutOfRangeError(f"no surface form for {n} (1..{MAX_NAMED})")
    if n <= 9:
        return UNITS[n - 1]
    if n <= 19:
        return TEENS[n]
    tens, units = divmod(n, BASE)
    return DECADES[tens] + (UNITS[units - 1] if units else "")


# =============================================================================
# Canonical Terms
# =============================================================================


def canonical_term(n: int) -> Term:
    """
    Base-10 expansion as a term.

    Exact powers of ten are 10^k; otherwise the non-zero digits a_k form a
    left-nested sum of mul(10^k, a_k), with the units digit as a bare literal.

    Examples:
        7  → 7
        10 → 10^1
        13 → (add (mul 10^1 1) 3)
        20 → (mul 10^1 2)

    Raises:
        NumberOutOfRangeError: Outside 1..9999
    """
    if not 1 <= n <= MAX_CANONICAL:
        raise NumberOutOfRangeError(f"no canonical term for {n} (1..{MAX_CANONICAL})")

    digits = [int(d) for d in str(n)]
    top = len(digits) - 1
    if digits[0] == 1 and not any(digits[1:]):
        return BasePow(top) if top else NumLit(1)

    terms: List[Term] = []
    for position, digit in enumerate(digits):
        exponent = top - position
        if digit == 0:
            continue
        terms.append(mul(BasePow(exponent), NumLit(digit)) if exponent else NumLit(digit))

    result = terms[0]
    for term in terms[1:]:
        result = add(result, term)
    return result


# =============================================================================
# Teacher
# =============================================================================


class NumeralTeacher:
    """
    Simulated counting teacher.

    Stateless apart from its settings; judge is a pure function.

    Attributes:
        orthography: Spelling convention
        substitutions: Replacement table used by the standard orthography
        max_number: Highest number this teacher will name
    """

    def __init__(
        self,
        logging_manager=None,
        orthography: Orthography = Orthography.PAPER,
        substitutions: Optional[Dict[str, str]] = None,
        max_number: int = MAX_NAMED,
    ):
        """
        Initialize the teacher (use create_numeral_teacher() instead).

        Args:
            logging_manager: Optional LoggingConfigManager
            orthography: paper or standard
            substitutions: Spelling table for the standard orthography
            max_number: Highest number to name (≤ 99)
        """
        if not 1 <= max_number <= MAX_NAMED:
            raise NumberOutOfRangeError(f"max_number must be in 1..{MAX_NAMED}, got {max_number}")
        self._logger = logging_manager.get_logger("teacher") if logging_manager else logger
        self.orthography = Orthography(orthography)
        self.substitutions = dict(DEFAULT_SUBSTITUTIONS if substitutions is None else substitutions)
        self.max_number = max_number

    def exponent_for(self, n: int) -> str:
        """Surface form of n in this teacher's orthography."""
        exponent = paper_exponent(n)
        if self.orthography is Orthography.STANDARD:
            for source, target in self.substitutions.items():
                exponent = exponent.replace(source, target)
        return exponent

    def ump_for(self, n: int) -> UMP:
        """
        The utterance-meaning pair for n.

        Raises:
            NumberOutOfRangeError: Outside 1..max_number
        """
        if not 1 <= n <= self.max_number:
            raise NumberOutOfRangeError(f"{n} is outside 1..{self.max_number}")
        return UMP(self.exponent_for(n), canonical_term(n))

    def stream(self, max_n: Optional[int] = None) -> Iterator[UMP]:
        """Count u₁ … u_max_n."""
        for n in range(1, (max_n or self.max_number) + 1):
            yield self.ump_for(n)

    def judge(self, expected: UMP, produced: Sequence[str]) -> List[Feedback]:
        """
        One verdict per produced exponent.

        Reward iff the exponent equals the expected one exactly; an empty
        production yields a single Punish with an empty exponent.
        """
        if not produced:
            return [Feedback.punish("")]
        return [
            Feedback.reward() if exponent == expected.exponent else Feedback.punish(exponent)
            for exponent in produced
        ]


# =============================================================================
# Factory Function
# =============================================================================


def create_numeral_teacher(
    config_manager=None,
    logging_manager=None,
    orthography: Optional[Orthography] = None,
    max_number: Optional[int] = None,
    substitutions: Optional[Dict[str, str]] = None,
) -> NumeralTeacher:
    """
    Factory function to create a NumeralTeacher.

    Following Clean Architecture v5.2 Rule #1: Factory Functions.

    Args:
        config_manager: Optional ConfigManager (section 'teacher')
        logging_manager: Optional LoggingConfigManager
        orthography: Override for the configured orthography
        max_number: Override for the configured range
        substitutions: Override for the configured spelling table

    Returns:
        Configured NumeralTeacher instance
    """
    settings = config_manager.get_teacher_config() if config_manager else {}

    teacher = NumeralTeacher(
        logging_manager=logging_manager,
        orthography=orthography or settings.get("orthography", Orthography.PAPER),
        substitutions=substitutions if substitutions is not None else settings.get("substitutions"),
        max_number=max_number or settings.get("max_number", MAX_NAMED),
    )
    logger.debug(f"🏭 Created teacher (orthography={teacher.orthography.value}, max={teacher.max_number})")
    return teacher


__all__ = [
    "UNITS",
    "TEENS",
    "DECADES",
    "MAX_NAMED",
    "MAX_CANONICAL",
    "paper_exponent",
    "canonical_term",
    "NumeralTeacher",
    "create_numeral_teacher",
]
