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
Utterance-Meaning Transducer - Bounded derivation enumeration over a lexicon
----------------------------------------------------------------------------
FILE VERSION: v1.0-3-3.1-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 3 - Transducer
CLEAN ARCHITECTURE: Compliant (Rule #1 Factory, Rule #2 DI)
============================================================================

RESPONSIBILITIES:
- Agenda-driven chart closure: seed with lexicon entries, apply merge to
  every chart pair and move to every chart item, deduplicate structurally
- Emit complete derivations in non-decreasing leaf order
- Generation (meaning → exponents) and parsing (exponent → meanings)
- Greedy replay of an ordered item list for the derive command
- Argument-slot analysis used by the learner's licensing reorganization

SEARCH STRATEGY:
1. Items are derivation trees; the agenda is a heap keyed by
   (leaf count, discovery order)
2. An item popped for the first time under its expression key is final;
   later items with the same key are dropped
3. Final items are indexed by the head's first feature so that only
   selector =f / base f pairs are tried
4. Items whose head waits for a missing licensee are never extended

USAGE:
    transducer = create_transducer(config_manager=config_manager)

    transducer.generate(lexicon, parse_term("(add (mul 10^1 1) 3)"))   # ['thirteen']
    transducer.parse(lexicon, "ten")                                    # [10^1]
"""

import heapq
import logging
import threading
from collections import OrderedDict, defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from src.models.enums import FeatureKind, RuleName
from src.models.grammar import Expression, Sign
from src.models.terms import Term
from src.services.grammar_engine import (
    START_CATEGORY,
    apply_merge,
    apply_move,
    expression_key,
    is_complete,
    is_stuck,
)
from src.services.term_algebra import DEFAULT_REDUCTION_BUDGET, alpha_key, beta_reduce
from src.utils.errors import ChartLimitError, GrammarError

# Module version
__version__ = "v1.0-3-3.1-1"

# Initialize logger
logger = logging.getLogger(__name__)

# =============================================================================
# Defaults
# =============================================================================

DEFAULT_MAX_LEAVES = 5
DEFAULT_CHART_CAP = 100_000
DEFAULT_CACHE_SIZE = 64

Lexicon = Tuple[Sign, ...]


# =============================================================================
# Derivation Trees
# =============================================================================


@dataclass(frozen=True)
class DerivationStep:
    """One rule application: rule, premise expressions, conclusion."""

    rule: RuleName
    premises: Tuple[Expression, ...]
    conclusion: Expression

    def __str__(self) -> str:
        premises = " ; ".join(str(premise) for premise in self.premises)
        return f"{self.rule}: {premises} => {self.conclusion}"


@dataclass(frozen=True)
class SlotUse:
    """
    A filled argument slot.

    Attributes:
        selector: Lexicon entry whose selector was checked
        position: Index of that selector in the entry's feature list
        filler: The selected lexicon entry, or None for a derived operand
        licensed: True when the filler kept licensees and moves later (merge-3)
    """

    selector: Sign
    position: int
    filler: Optional[Sign]
    licensed: bool = False


@dataclass(frozen=True)
class Derivation:
    """
    Derivation tree node.

    A leaf carries its lexicon entry and index; an inner node carries the
    rule and its premise derivations.
    """

    expression: Expression
    rule: Optional[RuleName] = None
    premises: Tuple["Derivation", ...] = ()
    entry: Optional[Sign] = None
    index: Optional[int] = None
    leaf_count: int = 1

    @classmethod
    def leaf(cls, sign: Sign, index: int) -> "Derivation":
        return cls(expression=Expression.lexical(sign), entry=sign, index=index)

    @classmethod
    def node(cls, rule: RuleName, premises: Sequence["Derivation"], expression: Expression) -> "Derivation":
        return cls(
            expression=expression,
            rule=rule,
            premises=tuple(premises),
            leaf_count=sum(p.leaf_count for p in premises),
        )

    @property
    def is_leaf(self) -> bool:
        return self.rule is None

    @property
    def result(self) -> Expression:
        return self.expression

    @property
    def exponent(self) -> str:
        return self.expression.head.exponent

    @property
    def semantics(self) -> Term:
        return self.expression.head.semantics

    @property
    def steps(self) -> List[DerivationStep]:
        """Rule applications in the order they were performed (post-order)."""
        if self.is_leaf:
            return []
        collected: List[DerivationStep] = []
        for premise in self.premises:
            collected.extend(premise.steps)
        collected.append(
            DerivationStep(self.rule, tuple(p.expression for p in self.premises), self.expression)
        )
        return collected

    @property
    def leaves(self) -> Tuple[int, ...]:
        """Lexicon indices of the leaves, left to right."""
        if self.is_leaf:
            return (self.index,)
        return tuple(i for premise in self.premises for i in premise.leaves)

    @property
    def head_origin(self) -> Sign:
        """The lexicon entry whose features the head sign still carries."""
        node = self
        while not node.is_leaf:
            node = node.premises[0]
        return node.entry

    def slots(self) -> List[SlotUse]:
        """Every merge in the tree as (selector entry, selector position, filler)."""
        uses: List[SlotUse] = []
        if self.is_leaf:
            return uses
        for premise in self.premises:
            uses.extend(premise.slots())
        if self.rule in (RuleName.MERGE_1, RuleName.MERGE_2, RuleName.MERGE_3):
            selector_tree, filler_tree = self.premises
            origin = selector_tree.head_origin
            position = len(origin.features) - len(selector_tree.expression.head.features)
            filler = filler_tree.entry if filler_tree.is_leaf else None
            uses.append(SlotUse(origin, position, filler, licensed=self.rule is RuleName.MERGE_3))
        return uses


@dataclass(frozen=True)
class ReplayResult:
    """Outcome of replaying an ordered list of lexicon items."""

    derivation: Derivation
    consumed: int
    total: int
    complete: bool

    @property
    def steps(self) -> List[DerivationStep]:
        return self.derivation.steps


# =============================================================================
# Chart Enumeration
# =============================================================================


def _first_feature(expression: Expression):
    return expression.head.syntype.first


def enumerate_derivations(
    lexicon: Sequence[Sign],
    start: str = START_CATEGORY,
    max_leaves: int = DEFAULT_MAX_LEAVES,
    chart_cap: int = DEFAULT_CHART_CAP,
    max_steps: int = DEFAULT_REDUCTION_BUDGET,
    admissible: Optional[Callable[[Expression], bool]] = None,
) -> Iterator[Derivation]:
    """
    Yield every complete derivation using at most max_leaves lexical items.

    Args:
        lexicon: Lexicon entries; each may be used any number of times
        start: Start category
        max_leaves: Leaf bound (≥ 1)
        chart_cap: Maximum number of final chart items
        max_steps: Beta reduction budget per rule application
        admissible: Optional pruning predicate on new expressions

    Yields:
        Complete derivations ordered by leaf count, then discovery order

    Raises:
        ValueError: If max_leaves < 1
        ChartLimitError: If the chart grows past chart_cap
    """
    if max_leaves < 1:
        raise ValueError(f"max_leaves must be ≥ 1, got {max_leaves}")

    agenda: List[Tuple[int, int, Derivation]] = []
    sequence = 0

    def push(derivation: Derivation) -> None:
        nonlocal sequence
        if admissible is not None and not admissible(derivation.expression):
            return
        heapq.heappush(agenda, (derivation.leaf_count, sequence, derivation))
        sequence += 1

    for index, sign in enumerate(lexicon):
        push(Derivation.leaf(sign, index))

    chart: Dict[tuple, Derivation] = {}
    selectors: Dict[str, List[Derivation]] = defaultdict(list)
    bases: Dict[str, List[Derivation]] = defaultdict(list)

    while agenda:
        _, _, item = heapq.heappop(agenda)
        key = expression_key(item.expression)
        if key in chart:
            continue
        chart[key] = item
        if len(chart) > chart_cap:
            raise ChartLimitError(chart_cap)

        expression = item.expression
        if is_complete(expression, start):
            yield item
        if is_stuck(expression):
            continue

        first = _first_feature(expression)
        if first is None:
            continue

        if first.kind is FeatureKind.LICENSOR:
            try:
                rule, moved = apply_move(expression, max_steps)
            except GrammarError:
                continue
            push(Derivation.node(rule, (item,), moved))

        elif first.kind is FeatureKind.SELECTOR:
            for other in bases[first.ident]:
                _try_merge(item, other, max_leaves, max_steps, push)
            selectors[first.ident].append(item)

        elif first.kind is FeatureKind.BASE:
            for other in selectors[first.ident]:
                _try_merge(other, item, max_leaves, max_steps, push)
            bases[first.ident].append(item)

    logger.debug(f"Chart closed with {len(chart)} items (max_leaves={max_leaves})")


def _try_merge(
    selector: Derivation,
    selected: Derivation,
    max_leaves: int,
    max_steps: int,
    push: Callable[[Derivation], None],
) -> None:
    if selector.leaf_count + selected.leaf_count > max_leaves:
        return
    try:
        rule, merged = apply_merge(selector.expression, selected.expression, max_steps)
    except GrammarError:
        return
    push(Derivation.node(rule, (selector, selected), merged))


def _substring_filter(target: str) -> Callable[[Expression], bool]:
    def admissible(expression: Expression) -> bool:
        return all(sign.exponent in target for sign in expression.signs)

    return admissible


# =============================================================================
# Greedy Replay
# =============================================================================


def derive(
    lexicon_items: Sequence[Sign],
    start: str = START_CATEGORY,
    max_steps: int = DEFAULT_REDUCTION_BUDGET,
) -> ReplayResult:
    """
    Combine items left to right.

    At each point move is tried first; otherwise the accumulated expression
    is merged with the next item, acting as selector when its head starts
    with a selector and as the selected operand otherwise.

    Raises:
        ValueError: If no items are given
    """
    if not lexicon_items:
        raise ValueError("derive needs at least one item")

    current = Derivation.leaf(lexicon_items[0], 0)
    consumed = 1
    while True:
        first = _first_feature(current.expression)
        if first is not None and first.kind is FeatureKind.LICENSOR:
            try:
                rule, moved = apply_move(current.expression, max_steps)
                current = Derivation.node(rule, (current,), moved)
                continue
            except GrammarError:
                break
        if consumed >= len(lexicon_items):
            break
        following = Derivation.leaf(lexicon_items[consumed], consumed)
        if first is not None and first.kind is FeatureKind.SELECTOR:
            pair = (current, following)
        else:
            pair = (following, current)
        try:
            rule, merged = apply_merge(pair[0].expression, pair[1].expression, max_steps)
        except GrammarError:
            break
        current = Derivation.node(rule, pair, merged)
        consumed += 1

    complete = consumed == len(lexicon_items) and is_complete(current.expression, start)
    return ReplayResult(current, consumed, len(lexicon_items), complete)


# =============================================================================
# Transducer Service
# =============================================================================


class _ChartSummary:
    """Complete derivations of one lexicon, indexed by meaning."""

    def __init__(self, derivations: List[Derivation]):
        self.derivations = derivations
        self.by_meaning: Dict[tuple, List[Derivation]] = defaultdict(list)
        for derivation in derivations:
            self.by_meaning[alpha_key(derivation.semantics)].append(derivation)


class UtteranceMeaningTransducer:
    """
    Bidirectional exponent/meaning mapping over a lexicon.

    Complete derivations are cached per lexicon so that repeated
    generation requests against an unchanged lexicon (the learner's
    regression checks) enumerate only once.

    Attributes:
        max_leaves: Default leaf bound
        chart_cap: Chart item cap
        start: Start category
        _cache: Lexicon → complete derivations and their meaning index (LRU)
        _stats: Enumeration statistics
        _lock: Guards _cache and _stats across threads
    """

    def __init__(
        self,
        logging_manager=None,
        max_leaves: int = DEFAULT_MAX_LEAVES,
        chart_cap: int = DEFAULT_CHART_CAP,
        reduction_budget: int = DEFAULT_REDUCTION_BUDGET,
        start: str = START_CATEGORY,
        cache_size: int = DEFAULT_CACHE_SIZE,
    ):
        """
        Initialize the transducer (use create_transducer() instead).

        Args:
            logging_manager: Optional LoggingConfigManager
            max_leaves: Default leaf bound
            chart_cap: Chart item cap
            reduction_budget: Beta reduction budget per rule application
            start: Start category
            cache_size: Number of lexicons whose derivations are kept

        Raises:
            ValueError: If max_leaves < 1
        """
        if max_leaves < 1:
            raise ValueError(f"max_leaves must be ≥ 1, got {max_leaves}")
        self._logger = (
            logging_manager.get_logger("transducer") if logging_manager else logger
        )
        self.max_leaves = max_leaves
        self.chart_cap = chart_cap
        self.reduction_budget = reduction_budget
        self.start = start
        self._cache_size = cache_size
        self._cache: "OrderedDict[Tuple[Lexicon, int], _ChartSummary]" = OrderedDict()
        self._stats = {"enumerations": 0, "cache_hits": 0}
        self._lock = threading.Lock()

    @property
    def stats(self) -> Dict[str, int]:
        """Enumeration statistics."""
        with self._lock:
            return dict(self._stats)

    def clear_cache(self) -> None:
        with self._lock:
            self._cache.clear()

    def _bound(self, max_leaves: Optional[int]) -> int:
        bound = self.max_leaves if max_leaves is None else max_leaves
        if bound < 1:
            raise ValueError(f"max_leaves must be ≥ 1, got {bound}")
        return bound

    # =========================================================================
    # Enumeration
    # =========================================================================

    def enumerate(self, lexicon: Sequence[Sign], max_leaves: Optional[int] = None) -> List[Derivation]:
        """All complete derivations of the lexicon (cached)."""
        return self._summary(lexicon, max_leaves).derivations

    def _summary(self, lexicon: Sequence[Sign], max_leaves: Optional[int]) -> "_ChartSummary":
        bound = self._bound(max_leaves)
        key = (tuple(lexicon), bound)
        with self._lock:
            cached = self._cache.get(key)
            if cached is not None:
                self._cache.move_to_end(key)
                self._stats["cache_hits"] += 1
                return cached

            derivations = list(
                enumerate_derivations(
                    key[0],
                    start=self.start,
                    max_leaves=bound,
                    chart_cap=self.chart_cap,
                    max_steps=self.reduction_budget,
                )
            )
            self._stats["enumerations"] += 1
            summary = _ChartSummary(derivations)
            self._cache[key] = summary
            if len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)
        self._logger.debug(
            f"🔧 Enumerated {len(derivations)} complete derivations "
            f"over {len(lexicon)} entries (max_leaves={bound})"
        )
        return summary

    def derivations_for(
        self, lexicon: Sequence[Sign], meaning: Term, max_leaves: Optional[int] = None
    ) -> List[Derivation]:
        """Complete derivations whose semantics equals the meaning."""
        target = alpha_key(beta_reduce(meaning, max_steps=self.reduction_budget))
        return list(self._summary(lexicon, max_leaves).by_meaning.get(target, ()))

    # =========================================================================
    # Generation and Parsing
    # =========================================================================

    def generate(self, lexicon: Sequence[Sign], meaning: Term, max_leaves: Optional[int] = None) -> List[str]:
        """
        Exponents of all complete derivations meaning the given term.

        Returns:
            Sorted, duplicate-free exponents; empty when nothing expresses it

        Raises:
            ValueError: If max_leaves < 1
        """
        return sorted({d.exponent for d in self.derivations_for(lexicon, meaning, max_leaves)})

    def parse(self, lexicon: Sequence[Sign], exponent: str, max_leaves: Optional[int] = None) -> List[Term]:
        """
        Normal-form meanings of all complete derivations of the exponent.

        Raises:
            ValueError: If the exponent is empty or max_leaves < 1
        """
        if not exponent:
            raise ValueError("cannot parse an empty exponent")

        bound = self._bound(max_leaves)
        meanings: List[Term] = []
        seen = set()
        for derivation in enumerate_derivations(
            tuple(lexicon),
            start=self.start,
            max_leaves=bound,
            chart_cap=self.chart_cap,
            max_steps=self.reduction_budget,
            admissible=_substring_filter(exponent),
        ):
            if derivation.exponent != exponent:
                continue
            key = alpha_key(derivation.semantics)
            if key not in seen:
                seen.add(key)
                meanings.append(derivation.semantics)
        return meanings

    def derive(self, items: Sequence[Sign]) -> ReplayResult:
        """Greedy left-to-right replay of the given entries."""
        return derive(items, start=self.start, max_steps=self.reduction_budget)


# =============================================================================
# Factory Function
# =============================================================================


def create_transducer(
    config_manager=None,
    logging_manager=None,
    max_leaves: Optional[int] = None,
    chart_cap: Optional[int] = None,
    reduction_budget: Optional[int] = None,
    start: Optional[str] = None,
) -> UtteranceMeaningTransducer:
    """
    Factory function to create an UtteranceMeaningTransducer.

    Following Clean Architecture v5.2 Rule #1: Factory Functions.

    Args:
        config_manager: Optional ConfigManager (section 'transducer')
        logging_manager: Optional LoggingConfigManager
        max_leaves: Override for the configured leaf bound
        chart_cap: Override for the configured chart cap
        reduction_budget: Override for the configured reduction budget
        start: Override for the configured start category

    Returns:
        Configured UtteranceMeaningTransducer instance
    """
    settings = config_manager.get_transducer_config() if config_manager else {}

    transducer = UtteranceMeaningTransducer(
        logging_manager=logging_manager,
        max_leaves=settings.get("max_leaves", DEFAULT_MAX_LEAVES) if max_leaves is None else max_leaves,
        chart_cap=settings.get("chart_cap", DEFAULT_CHART_CAP) if chart_cap is None else chart_cap,
        reduction_budget=(
            settings.get("reduction_budget", DEFAULT_REDUCTION_BUDGET) if reduction_budget is None else reduction_budget
        ),
        start=start or settings.get("start_category", START_CATEGORY),
    )
    logger.debug(
        f"🏭 Created transducer (max_leaves={transducer.max_leaves}, chart_cap={transducer.chart_cap})"
    )
    return transducer


__all__ = [
    "DEFAULT_MAX_LEAVES",
    "DEFAULT_CHART_CAP",
    "Lexicon",
    "DerivationStep",
    "SlotUse",
    "Derivation",
    "ReplayResult",
    "enumerate_derivations",
    "derive",
    "UtteranceMeaningTransducer",
    "create_transducer",
]
