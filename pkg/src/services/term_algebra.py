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
Term Algebra - Reduction, evaluation, anti-unification and text codec
----------------------------------------------------------------------------
FILE VERSION: v1.0-1-1.6-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 1 - Term Algebra & Grammar Kernel
CLEAN ARCHITECTURE: Compliant
============================================================================

RESPONSIBILITIES:
- Capture-avoiding substitution and beta reduction (normal and applicative order)
- Integer evaluation of lambda-free arithmetic terms
- Alpha-equivalence and canonical alpha keys (used for deduplication)
- One-hole anti-unification and operator factoring for the learner
- Text serialization: INT | 10^INT | VAR | (lam v t) | (add t t) | (mul t t) | (app t t)

All functions are pure; terms are immutable.

USAGE:
    from src.services.term_algebra import parse_term, beta_reduce, evaluate

    term = parse_term("(app (lam x (add (mul 10^1 1) x)) 3)")
    beta_reduce(term)            # (add (mul 10^1 1) 3)
    evaluate(term)               # 13
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.models.enums import ReductionStrategy
from src.models.terms import (
    ADD,
    BASE,
    MUL,
    App,
    BasePow,
    Lam,
    NumLit,
    OpAdd,
    OpMul,
    Term,
    Var,
    binary_parts,
)
from src.utils.errors import (
    IllFormedTermError,
    NoAbstractionError,
    NonTerminationError,
    NotANumberError,
    TermSyntaxError,
)

# Module version
__version__ = "v1.0-1-1.6-1"

# Initialize logger
logger = logging.getLogger(__name__)

# =============================================================================
# Constants
# =============================================================================

# Default reduction step budget
DEFAULT_REDUCTION_BUDGET = 10_000

# Words that can never be variables
KEYWORDS = frozenset({"lam", "add", "mul", "app"})

_TOKEN_PATTERN = re.compile(r"\s*(?:(\()|(\))|10\^(\d+)|(\d+)|([a-z][a-z0-9]*)|(\S))")
_VAR_PATTERN = re.compile(r"^[a-z][a-z0-9]*$")


# =============================================================================
# Variables and Substitution
# =============================================================================


def free_vars(term: Term) -> FrozenSet[str]:
    """Return the free variable names of a term."""
    if isinstance(term, Var):
        return frozenset({term.name})
    if isinstance(term, Lam):
        return free_vars(term.body) - {term.var}
    if isinstance(term, App):
        return free_vars(term.fun) | free_vars(term.arg)
    return frozenset()


def all_vars(term: Term) -> FrozenSet[str]:
    """Return every variable name occurring in a term, bound or free."""
    if isinstance(term, Var):
        return frozenset({term.name})
    if isinstance(term, Lam):
        return all_vars(term.body) | {term.var}
    if isinstance(term, App):
        return all_vars(term.fun) | all_vars(term.arg)
    return frozenset()


def is_closed(term: Term) -> bool:
    """True iff the term has no free variables."""
    return not free_vars(term)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """
    Return a variable name derived from base that is not in avoid.

    Examples:
        >>> fresh_name("x", {"x", "x1"})
        'x2'
    """
    taken = set(avoid)
    if base not in taken and base not in KEYWORDS:
        return base
    index = 1
    while f"{base}{index}" in taken:
        index += 1
    return f"{base}{index}"


def substitute(term: Term, name: str, value: Term) -> Term:
    """
    Capture-avoiding substitution term[name := value].

    Binders that would capture a free variable of value are renamed.
    """
    if isinstance(term, Var):
        return value if term.name == name else term
    if isinstance(term, App):
        return App(substitute(term.fun, name, value), substitute(term.arg, name, value))
    if isinstance(term, Lam):
        if term.var == name:
            return term
        value_free = free_vars(value)
        if term.var in value_free and name in free_vars(term.body):
            renamed = fresh_name(term.var, value_free | all_vars(term.body) | {name})
            body = substitute(term.body, term.var, Var(renamed))
            return Lam(renamed, substitute(body, name, value))
        return Lam(term.var, substitute(term.body, name, value))
    return term


# =============================================================================
# Beta Reduction
# =============================================================================


def _contract(redex: App) -> Term:
    lam = redex.fun
    return substitute(lam.body, lam.var, redex.arg)


def _step_normal(term: Term) -> Optional[Term]:
    # leftmost-outermost
    if isinstance(term, App):
        if isinstance(term.fun, Lam):
            return _contract(term)
        reduced = _step_normal(term.fun)
        if reduced is not None:
            return App(reduced, term.arg)
        reduced = _step_normal(term.arg)
        if reduced is not None:
            return App(term.fun, reduced)
        return None
    if isinstance(term, Lam):
        reduced = _step_normal(term.body)
        return Lam(term.var, reduced) if reduced is not None else None
    return None


def _step_applicative(term: Term) -> Optional[Term]:
    # leftmost-innermost
    if isinstance(term, App):
        reduced = _step_applicative(term.fun)
        if reduced is not None:
            return App(reduced, term.arg)
        reduced = _step_applicative(term.arg)
        if reduced is not None:
            return App(term.fun, reduced)
        if isinstance(term.fun, Lam):
            return _contract(term)
        return None
    if isinstance(term, Lam):
        reduced = _step_applicative(term.body)
        return Lam(term.var, reduced) if reduced is not None else None
    return None


_STEPPERS = {
    ReductionStrategy.NORMAL: _step_normal,
    ReductionStrategy.APPLICATIVE: _step_applicative,
}


def beta_reduce(
    term: Term,
    strategy: ReductionStrategy = ReductionStrategy.NORMAL,
    max_steps: int = DEFAULT_REDUCTION_BUDGET,
    allow_free: bool = False,
) -> Term:
    """
    Reduce a term to beta-normal form.

    Args:
        term: Term to reduce; must be closed unless allow_free is set
        strategy: NORMAL (leftmost-outermost) or APPLICATIVE
        max_steps: Reduction step budget
        allow_free: Permit free variables (used on open contexts internally)

    Returns:
        The beta-normal form

    Raises:
        IllFormedTermError: If the term has an unbound variable
        NonTerminationError: If the budget is exhausted
    """
    if not allow_free:
        unbound = free_vars(term)
        if unbound:
            raise IllFormedTermError(f"unbound variable(s): {', '.join(sorted(unbound))}")

    step = _STEPPERS[ReductionStrategy(strategy)]
    current = term
    for _ in range(max_steps):
        reduced = step(current)
        if reduced is None:
            return current
        current = reduced

    if step(current) is None:
        return current
    raise NonTerminationError(max_steps)


def is_normal(term: Term) -> bool:
    """True iff the term contains no beta redex."""
    return _step_normal(term) is None


# =============================================================================
# Evaluation
# =============================================================================


def _value(term: Term) -> int:
    if isinstance(term, NumLit):
        return term.value
    if isinstance(term, BasePow):
        return BASE ** term.exponent
    parts = binary_parts(term)
    if parts is not None:
        op, left, right = parts
        if isinstance(op, OpAdd):
            return _value(left) + _value(right)
        return _value(left) * _value(right)
    raise NotANumberError(f"not an arithmetic term: {format_term(term)}")


def evaluate(term: Term, max_steps: int = DEFAULT_REDUCTION_BUDGET) -> int:
    """
    Evaluate a closed term to an integer.

    Raises:
        NotANumberError: If a lambda, variable or unsaturated operator remains
    """
    return _value(beta_reduce(term, max_steps=max_steps))


# =============================================================================
# Alpha Equivalence
# =============================================================================


def alpha_key(term: Term, _env: Optional[Dict[str, int]] = None, _depth: int = 0) -> tuple:
    """
    Canonical, hashable key: equal keys iff alpha-equivalent terms.

    Bound variables are replaced by binder distances (de Bruijn style).
    """
    env = _env or {}
    if isinstance(term, NumLit):
        return ("n", term.value)
    if isinstance(term, BasePow):
        return ("p", term.exponent)
    if isinstance(term, OpAdd):
        return ("+",)
    if isinstance(term, OpMul):
        return ("*",)
    if isinstance(term, Var):
        if term.name in env:
            return ("b", _depth - env[term.name] - 1)
        return ("f", term.name)
    if isinstance(term, Lam):
        inner = dict(env)
        inner[term.var] = _depth
        return ("l", alpha_key(term.body, inner, _depth + 1))
    return ("a", alpha_key(term.fun, env, _depth), alpha_key(term.arg, env, _depth))


def alpha_equivalent(left: Term, right: Term) -> bool:
    """True iff the two terms differ at most in bound variable names."""
    return alpha_key(left) == alpha_key(right)


def same_meaning(left: Term, right: Term) -> bool:
    """Alpha-equivalence of beta-normal forms."""
    return alpha_equivalent(beta_reduce(left), beta_reduce(right))


# =============================================================================
# Anti-Unification
# =============================================================================


@dataclass(frozen=True)
class AntiUnification:
    """
    One-hole generalization of two terms.

    Attributes:
        context: Lam(x, C[x]) shared by both inputs
        arg1: Filler reproducing the first input
        arg2: Filler reproducing the second input
    """

    context: Lam
    arg1: Term
    arg2: Term


def anti_unify(first: Term, second: Term) -> Optional[AntiUnification]:
    """
    Least general generalization with a single hole variable.

    Returns:
        AntiUnification, or None when no common pattern exists (the
        inputs differ at the root, or at positions that one variable
        cannot cover, or the fillers are not closed)

    Raises:
        NoAbstractionError: If the terms are alpha-equivalent

    Examples:
        (add (mul 10^1 1) 3), (add (mul 10^1 1) 4)
            → (lam x (add (mul 10^1 1) x)), 3, 4
    """
    if alpha_equivalent(first, second):
        raise NoAbstractionError("nothing varies between identical terms")

    hole = fresh_name("x", all_vars(first) | all_vars(second))
    differences: List[Tuple[Term, Term]] = []

    def generalize(left: Term, right: Term) -> Term:
        if left == right:
            return left
        if isinstance(left, App) and isinstance(right, App):
            return App(generalize(left.fun, right.fun), generalize(left.arg, right.arg))
        if isinstance(left, Lam) and isinstance(right, Lam) and left.var == right.var:
            return Lam(left.var, generalize(left.body, right.body))
        differences.append((left, right))
        return Var(hole)

    body = generalize(first, second)

    if body == Var(hole):
        return None
    arg1, arg2 = differences[0]
    if any(pair != (arg1, arg2) for pair in differences[1:]):
        return None
    if not (is_closed(arg1) and is_closed(arg2)):
        return None

    return AntiUnification(context=Lam(hole, body), arg1=arg1, arg2=arg2)


def match_context(context: Lam, term: Term) -> Optional[Term]:
    """
    Find the filler r with context(r) = term, by one-way matching.

    Args:
        context: One-hole context Lam(x, C[x]) in normal form
        term: Normal-form term to match

    Returns:
        The closed filler, or None if the term is not an instance
    """
    hole = context.var
    binding: List[Term] = []

    def match(pattern: Term, target: Term, shadowed: bool) -> bool:
        if isinstance(pattern, Var) and pattern.name == hole and not shadowed:
            if binding:
                return alpha_equivalent(binding[0], target)
            binding.append(target)
            return True
        if isinstance(pattern, App) and isinstance(target, App):
            return match(pattern.fun, target.fun, shadowed) and match(pattern.arg, target.arg, shadowed)
        if isinstance(pattern, Lam) and isinstance(target, Lam) and pattern.var == target.var:
            return match(pattern.body, target.body, shadowed or pattern.var == hole)
        return pattern == target

    if not match(context.body, term, False) or not binding:
        return None
    return binding[0] if is_closed(binding[0]) else None


# =============================================================================
# Operator Factoring
# =============================================================================


def curried_operator(op: Term, swapped: bool = False) -> Lam:
    """
    The abstracted binary operator.

    Returns:
        λy.λx.op(y)(x), or λx.λy.op(y)(x) when swapped (the first
        argument becomes the right operand)
    """
    core = App(App(op, Var("y")), Var("x"))
    if swapped:
        return Lam("x", Lam("y", core))
    return Lam("y", Lam("x", core))


def factor_operator(term: Term) -> Optional[Tuple[Lam, Term]]:
    """
    Split λx.op(G)(x) into the plain operator and its fixed operand.

    Returns:
        (λy.λx.op(y)(x), G), or None when the term is not of that shape
    """
    if not isinstance(term, Lam):
        return None
    parts = binary_parts(term.body)
    if parts is None:
        return None
    op, fixed, right = parts
    if right != Var(term.var) or not is_closed(fixed):
        return None
    return curried_operator(op), fixed


# =============================================================================
# Text Codec
# =============================================================================


def format_term(term: Term) -> str:
    """Render a term in canonical text form (single spaces, no trailing space)."""
    if isinstance(term, NumLit):
        return str(term.value)
    if isinstance(term, BasePow):
        return f"{BASE}^{term.exponent}"
    if isinstance(term, OpAdd):
        return "add"
    if isinstance(term, OpMul):
        return "mul"
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Lam):
        return f"(lam {term.var} {format_term(term.body)})"
    parts = binary_parts(term)
    if parts is not None:
        op, left, right = parts
        name = "add" if isinstance(op, OpAdd) else "mul"
        return f"({name} {format_term(left)} {format_term(right)})"
    return f"(app {format_term(term.fun)} {format_term(term.arg)})"


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens: List[Tuple[str, str, int]] = []
    position = 0
    while position < len(text):
        match = _TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            break
        if match.group(1):
            tokens.append(("(", "(", match.start(1)))
        elif match.group(2):
            tokens.append((")", ")", match.start(2)))
        elif match.group(3) is not None:
            tokens.append(("pow", match.group(3), match.start(3) - 3))
        elif match.group(4) is not None:
            tokens.append(("int", match.group(4), match.start(4)))
        elif match.group(5) is not None:
            tokens.append(("name", match.group(5), match.start(5)))
        elif match.group(6) is not None:
            raise TermSyntaxError(f"unknown token '{match.group(6)}'", match.start(6))
        position = match.end()
    return tokens


class _TermParser:
    """Recursive descent over the token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _next(self, expected: str) -> Tuple[str, str, int]:
        if self.index >= len(self.tokens):
            raise TermSyntaxError(f"unexpected end of input, expected {expected}", len(self.text))
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _close(self) -> None:
        kind, value, position = self._next("')'")
        if kind != ")":
            raise TermSyntaxError(f"expected ')' but found '{value}'", position)

    def parse(self) -> Term:
        term = self.term()
        if self.index < len(self.tokens):
            _, value, position = self.tokens[self.index]
            raise TermSyntaxError(f"unexpected token '{value}'", position)
        return term

    def term(self) -> Term:
        kind, value, position = self._next("a term")
        if kind == "int":
            return NumLit(int(value))
        if kind == "pow":
            return BasePow(int(value))
        if kind == "name":
            if value == "add":
                return ADD
            if value == "mul":
                return MUL
            if value in KEYWORDS:
                raise TermSyntaxError(f"keyword '{value}' outside a form", position)
            return Var(value)
        if kind == ")":
            raise TermSyntaxError("unexpected ')'", position)

        head_kind, head, head_position = self._next("a form keyword")
        if head_kind != "name" or head not in KEYWORDS:
            raise TermSyntaxError(f"unknown form '{head}'", head_position)

        if head == "lam":
            var_kind, var, var_position = self._next("a variable")
            if var_kind != "name" or var in KEYWORDS or not _VAR_PATTERN.match(var):
                raise TermSyntaxError(f"invalid variable '{var}'", var_position)
            body = self.term()
            self._close()
            return Lam(var, body)

        left = self.term()
        right = self.term()
        self._close()
        if head == "add":
            return App(App(ADD, left), right)
        if head == "mul":
            return App(App(MUL, left), right)
        return App(left, right)


def parse_term(text: str) -> Term:
    """
    Parse canonical term text.

    Raises:
        TermSyntaxError: With the character position of the problem
    """
    return _TermParser(text).parse()


__all__ = [
    "DEFAULT_REDUCTION_BUDGET",
    "KEYWORDS",
    "free_vars",
    "all_vars",
    "is_closed",
    "fresh_name",
    "substitute",
    "beta_reduce",
    "is_normal",
    "evaluate",
    "alpha_key",
    "alpha_equivalent",
    "same_meaning",
    "AntiUnification",
    "anti_unify",
    "match_context",
    "curried_operator",
    "factor_operator",
    "format_term",
    "parse_term",
]
