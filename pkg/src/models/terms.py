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
Term Models - Arithmetic lambda terms (immutable value types)
----------------------------------------------------------------------------
FILE VERSION: v1.0-1-1.3-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 1 - Term Algebra & Grammar Kernel
CLEAN ARCHITECTURE: Compliant
============================================================================

MODELS:
- NumLit: non-negative integer literal
- BasePow: power of the base, 10^k, an atomic argument of ×
- OpAdd / OpMul: curried binary operators, used as App(App(op, a), b)
- Var / Lam / App: the lambda calculus

All terms are frozen dataclasses, hashable and safe to share between
threads. Structural equality is Python equality; alpha-equivalence lives in
src.services.term_algebra.

USAGE:
    from src.models.terms import NumLit, BasePow, add, mul

    fourty_two = add(mul(BasePow(1), NumLit(4)), NumLit(2))
"""

from dataclasses import dataclass
from typing import Union

__version__ = "v1.0-1-1.3-1"

# Fixed numeral base
BASE = 10


# =============================================================================
# Term Constructors
# =============================================================================


@dataclass(frozen=True)
class NumLit:
    """Integer literal."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"NumLit must be non-negative, got {self.value}")

    def __str__(self) -> str:
        return _render(self)


@dataclass(frozen=True)
class BasePow:
    """The literal 10^k."""

    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError(f"BasePow exponent must be non-negative, got {self.exponent}")

    def __str__(self) -> str:
        return _render(self)


@dataclass(frozen=True)
class OpAdd:
    """Curried addition, +(y)(x) = y + x."""

    def __str__(self) -> str:
        return _render(self)


@dataclass(frozen=True)
class OpMul:
    """Curried multiplication, ×(y)(x) = y × x."""

    def __str__(self) -> str:
        return _render(self)


@dataclass(frozen=True)
class Var:
    """Variable occurrence."""

    name: str

    def __str__(self) -> str:
        return _render(self)


@dataclass(frozen=True)
class Lam:
    """Lambda abstraction λvar.body."""

    var: str
    body: "Term"

    def __str__(self) -> str:
        return _render(self)


@dataclass(frozen=True)
class App:
    """Application fun(arg)."""

    fun: "Term"
    arg: "Term"

    def __str__(self) -> str:
        return _render(self)


Term = Union[NumLit, BasePow, OpAdd, OpMul, Var, Lam, App]

# Operator singletons
ADD = OpAdd()
MUL = OpMul()


# =============================================================================
# Sugar
# =============================================================================


def add(left: Term, right: Term) -> App:
    """Build +(left)(right)."""
    return App(App(ADD, left), right)


def mul(left: Term, right: Term) -> App:
    """Build ×(left)(right)."""
    return App(App(MUL, left), right)


def binary_parts(term: Term):
    """
    Decompose a saturated binary operation.

    Returns:
        (operator, left, right) when term is App(App(op, l), r) with
        op an OpAdd/OpMul, otherwise None
    """
    if isinstance(term, App) and isinstance(term.fun, App):
        op = term.fun.fun
        if isinstance(op, (OpAdd, OpMul)):
            return op, term.fun.arg, term.arg
    return None


def _render(term: Term) -> str:
    # local import: the text codec lives with the term operations
    from src.services.term_algebra import format_term

    return format_term(term)


__all__ = [
    "BASE",
    "NumLit",
    "BasePow",
    "OpAdd",
    "OpMul",
    "Var",
    "Lam",
    "App",
    "Term",
    "ADD",
    "MUL",
    "add",
    "mul",
    "binary_parts",
]
