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
Learner Service - Lexicon acquisition from utterance-meaning pairs
----------------------------------------------------------------------------
FILE VERSION: v1.0-4-4.3-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 4 - Teacher & Learner
CLEAN ARCHITECTURE: Compliant (Rule #1 Factory, Rule #2 DI)
============================================================================

RESPONSIBILITIES:
- Rote addition of unanalysed words
- Segmentation of shared affixes with one-hole meaning abstraction
- Recognition of already learned morphemes in new words
- Punishment-driven licensing: fresh +l/-l pairs restricting an argument slot
- Semantic reorganization: affix entries become a void operator plus a head
- The counting loop: observe, regression check, reorganize

STATE:
LearnerState is an immutable value. Every operation returns a new state;
the lexicon only changes through apply_event, the same function trace
replay uses.

TRAINING LOOP (per number n):
1. observe(uₙ): detect a pattern or memorise the word
2. reproduce_and_learn over the whole history (regression check)
3. semantic_reorg, then repeat 2 until nothing changes

USAGE:
    learner = create_numeral_learner(run_config=run_config)

    lexicon, trace = learner.train(19)
"""

import logging
import os
from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from src.models.enums import AffixSide, Category, FeatureKind, TraceEventKind
from src.models.grammar import Feature, Sign, SynType
from src.models.learning import UMP, Affix, RunConfig, TraceEvent, apply_event
from src.models.terms import Lam, Term, binary_parts
from src.services.grammar_engine import validate_syntype
from src.services.teacher_service import NumeralTeacher, create_numeral_teacher
from src.services.term_algebra import (
    alpha_equivalent,
    anti_unify,
    beta_reduce,
    curried_operator,
    evaluate,
    factor_operator,
    match_context,
)
from src.services.transducer import UtteranceMeaningTransducer, create_transducer
from src.utils.errors import LearningStuckError, NoAbstractionError, NotANumberError, UnresolvablePunishError

# Module version
__version__ = "v1.0-4-4.3-1"

# Initialize logger
logger = logging.getLogger(__name__)


# =============================================================================
# State
# =============================================================================


@dataclass(frozen=True)
class LearnerState:
    """
    The learner's mental state.

    Attributes:
        lexicon: Entries in insertion order
        clock: Number of UMPs observed
        history: Every observed UMP, oldest first
        affixes: Morphemes segmented so far
        next_licensee: Counter for fresh licensing identifiers
        events: Trace of everything that happened
        rewarded: UMPs already rewarded once (their repeat rewards are not traced)
    """

    lexicon: Tuple[Sign, ...] = ()
    clock: int = 0
    history: Tuple[UMP, ...] = ()
    affixes: Tuple[Affix, ...] = ()
    next_licensee: int = 1
    events: Tuple[TraceEvent, ...] = ()
    rewarded: FrozenSet[UMP] = frozenset()


@dataclass(frozen=True)
class Detection:
    """
    A segmentation trigger.

    Attributes:
        affix: Shared morpheme exponent
        side: Where the morpheme sits relative to its argument
        context: One-hole meaning context λx.C[x]
        pairs: (residual exponent, residual meaning), stored word first
        removals: Whole-word entries the segmentation replaces
        known: True when the morpheme was learned earlier
        licensees: Licensees the morpheme's argument slot demands
    """

    affix: str
    side: AffixSide
    context: Lam
    pairs: Tuple[Tuple[str, Term], ...]
    removals: Tuple[Sign, ...] = ()
    known: bool = False
    licensees: Tuple[str, ...] = ()


def _common_prefix_length(left: str, right: str) -> int:
    return len(os.path.commonprefix([left, right]))


def _common_suffix_length(left: str, right: str) -> int:
    return _common_prefix_length(left[::-1], right[::-1])


def _split_affix_features(features: Sequence[Feature], start: str) -> Optional[Tuple[str, ...]]:
    """[=f, +l…, f] → the licensor ids; None for any other shape."""
    if len(features) < 2 or features[0] != Feature.selector(start) or features[-1] != Feature.base(start):
        return None
    middle = features[1:-1]
    if any(f.kind is not FeatureKind.LICENSOR for f in middle):
        return None
    return tuple(f.ident for f in middle)


def _split_operator_features(
    features: Sequence[Feature], start: str
) -> Optional[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
    """[=f, +A1…, =f, +A2…, f] → (A1, A2); None for any other shape."""
    if not features or features[0] != Feature.selector(start):
        return None
    index = 1
    groups: List[List[str]] = [[], []]
    for group in range(2):
        while index < len(features) and features[index].kind is FeatureKind.LICENSOR:
            groups[group].append(features[index].ident)
            index += 1
        if group == 0:
            if index >= len(features) or features[index] != Feature.selector(start):
                return None
            index += 1
    if tuple(features[index:]) != (Feature.base(start),):
        return None
    return tuple(groups[0]), tuple(groups[1])


def _factor(context: Term) -> Optional[Tuple[Term, Term]]:
    """λx.op(G)(x) → (op, G)."""
    factored = factor_operator(context)
    if factored is None:
        return None
    curried, fixed = factored
    return binary_parts(curried.body.body)[0], fixed


# =============================================================================
# Learner
# =============================================================================


class NumeralLearner:
    """
    Cognitive agent acquiring a minimalist lexicon for numerals.

    Attributes:
        _teacher: Judges reproductions
        _transducer: Generates candidate exponents
        _config: Run configuration
        _logger: Structured logger
    """

    def __init__(
        self,
        teacher: NumeralTeacher,
        transducer: UtteranceMeaningTransducer,
        run_config: RunConfig,
        logging_manager=None,
    ):
        """
        Initialize the learner (use create_numeral_learner() instead).

        Args:
            teacher: NumeralTeacher instance
            transducer: UtteranceMeaningTransducer instance
            run_config: Validated run configuration
            logging_manager: Optional LoggingConfigManager
        """
        self._teacher = teacher
        self._transducer = transducer
        self._config = run_config
        self._logger = logging_manager.get_logger("learner") if logging_manager else logger
        self._start = run_config.start_category

    @staticmethod
    def initial_state() -> LearnerState:
        """The empty lexicon."""
        return LearnerState()

    # =========================================================================
    # Event Application
    # =========================================================================

    def _record(
        self,
        state: LearnerState,
        kind: TraceEventKind,
        added: Iterable[Sign] = (),
        removed: Iterable[Sign] = (),
        ump: Optional[UMP] = None,
        offending: Optional[str] = None,
    ) -> LearnerState:
        event = TraceEvent(
            t=state.clock,
            kind=kind,
            added=tuple(added),
            removed=tuple(removed),
            ump=ump,
            offending=offending,
        )
        for sign in event.added:
            if not validate_syntype(sign.syntype):
                raise ValueError(f"refusing to add ill-typed entry {sign}")
        return replace(state, lexicon=apply_event(state.lexicon, event), events=state.events + (event,))

    def _fresh_licensee(self, state: LearnerState) -> Tuple[str, LearnerState]:
        used = {f.ident for sign in state.lexicon for f in sign.features}
        counter = state.next_licensee
        while True:
            stem = self._config.licensee_stem
            ident = stem if counter == 1 else f"{stem}{counter}"
            counter += 1
            if ident not in used:
                return ident, replace(state, next_licensee=counter)

    def _num(self, *licensees: str) -> Tuple[Feature, ...]:
        return (Feature.base(self._start),) + tuple(Feature.licensee(ident) for ident in licensees)

    def _entry(self, exponent: str, features: Sequence[Feature], semantics: Term) -> Sign:
        return Sign(exponent, SynType(Category.LEXICAL, tuple(features)), semantics)

    def _has(self, state: LearnerState, exponent: str, features: Sequence[Feature], semantics: Term) -> bool:
        return any(
            sign.exponent == exponent
            and sign.features == tuple(features)
            and alpha_equivalent(sign.semantics, semantics)
            for sign in state.lexicon
        )

    # =========================================================================
    # Observation
    # =========================================================================

    def observe(self, state: LearnerState, ump: UMP) -> LearnerState:
        """
        Take in one UMP: segment it if a pattern fires, otherwise memorise it.

        Re-observing a UMP already in the history leaves the state unchanged.
        """
        if ump in state.history:
            return state

        ump = UMP(ump.exponent, beta_reduce(ump.semantics))
        state = replace(state, clock=state.clock + 1)
        detection = self.detect_pattern(state, ump)
        if detection is not None:
            state = self.segment_and_revise(state, detection, ump)
        else:
            entry = self._entry(ump.exponent, self._num(), ump.semantics)
            if entry not in state.lexicon:
                state = self._record(state, TraceEventKind.ROTE_ADD, added=[entry], ump=ump)
                self._logger.debug(f"📥 t={state.clock} rote {entry}")
        return replace(state, history=state.history + (ump,))

    def _whole_words(self, state: LearnerState) -> List[Tuple[int, Sign]]:
        """Plain entries for taught words, including words that are also prefixes (twenty)."""
        return [
            (index, sign)
            for index, sign in enumerate(state.lexicon)
            if sign.exponent and sign.features == self._num() and self._taught(state, sign)
        ]

    def _aligned(self, state: LearnerState, residual: str, meaning: Term) -> bool:
        return any(
            alpha_equivalent(sign.semantics, meaning)
            and _common_prefix_length(sign.exponent, residual) >= self._config.min_stem_overlap
            for sign in state.lexicon
        )

    def _known_residual(self, state: LearnerState, residual: str, meaning: Term) -> bool:
        return any(
            sign.exponent == residual and alpha_equivalent(sign.semantics, meaning) for sign in state.lexicon
        )

    def detect_pattern(self, state: LearnerState, ump: UMP) -> Optional[Detection]:
        """
        Look for a morpheme in the incoming word.

        Learned morphemes are tried first; otherwise the word is compared
        with every stored whole word for a shared proper prefix or suffix
        whose meanings anti-unify and whose residuals align with known stems.

        Returns:
            Detection, or None when nothing fires
        """
        known = self._detect_known(state, ump)
        if known is not None:
            return known
        return self._detect_pair(state, ump)

    def _detect_known(self, state: LearnerState, ump: UMP) -> Optional[Detection]:
        best: Optional[Detection] = None
        for affix in state.affixes:
            size = len(affix.exponent)
            if affix.side is AffixSide.SUFFIX:
                matches = ump.exponent.endswith(affix.exponent)
                residual = ump.exponent[:-size]
            else:
                matches = ump.exponent.startswith(affix.exponent)
                residual = ump.exponent[size:]
            if not matches or not residual:
                continue
            filler = match_context(affix.context, ump.semantics)
            if filler is None:
                continue
            licensees = self._slot_licensees(state, affix)
            if licensees is None:
                continue
            if best is None or size > len(best.affix):
                best = Detection(
                    affix=affix.exponent,
                    side=affix.side,
                    context=affix.context,
                    pairs=((residual, filler),),
                    known=True,
                    licensees=licensees,
                )
        return best

    def _slot_licensees(self, state: LearnerState, affix: Affix) -> Optional[Tuple[str, ...]]:
        """
        Licensees the morpheme's argument must carry, if it is realised.

        The morpheme is realised either as its own affix entry or as a
        void operator together with a head entry.
        """
        for sign in state.lexicon:
            if sign.exponent != affix.exponent:
                continue
            licensors = _split_affix_features(sign.features, self._start)
            if licensors is not None and alpha_equivalent(sign.semantics, affix.context):
                return licensors

        factored = _factor(affix.context)
        if factored is None:
            return None
        op, fixed = factored
        swapped = affix.side is AffixSide.PREFIX
        for _, first, second in self._operators(state, op, swapped):
            if swapped:
                if len(second) != 1:
                    continue
                head_features, demanded = self._num(second[0]), first
            else:
                head_features, demanded = self._num(*first), second
            if self._has(state, affix.exponent, head_features, fixed):
                return demanded
        return None

    def _operators(self, state: LearnerState, op: Term, swapped: bool):
        target = curried_operator(op, swapped)
        for sign in state.lexicon:
            if sign.exponent or not alpha_equivalent(sign.semantics, target):
                continue
            groups = _split_operator_features(sign.features, self._start)
            if groups is not None:
                yield sign, groups[0], groups[1]

    def _detect_pair(self, state: LearnerState, ump: UMP) -> Optional[Detection]:
        minimum = self._config.min_affix_length
        best_rank = None
        best: Optional[Detection] = None

        for index, stored in self._whole_words(state):
            if stored.exponent == ump.exponent:
                continue
            try:
                generalization = anti_unify(stored.semantics, ump.semantics)
            except NoAbstractionError:
                continue
            if generalization is None:
                continue

            shortest = min(len(stored.exponent), len(ump.exponent))
            for side, common in (
                (AffixSide.SUFFIX, _common_suffix_length(stored.exponent, ump.exponent)),
                (AffixSide.PREFIX, _common_prefix_length(stored.exponent, ump.exponent)),
            ):
                for size in range(min(common, shortest - 1), minimum - 1, -1):
                    if side is AffixSide.SUFFIX:
                        affix = ump.exponent[-size:]
                        residuals = (stored.exponent[:-size], ump.exponent[:-size])
                    else:
                        affix = ump.exponent[:size]
                        residuals = (stored.exponent[size:], ump.exponent[size:])
                    pairs = (
                        (residuals[0], generalization.arg1),
                        (residuals[1], generalization.arg2),
                    )
                    if not all(self._aligned(state, res, term) for res, term in pairs):
                        continue
                    exact = sum(self._known_residual(state, res, term) for res, term in pairs)
                    rank = (exact, size, side is AffixSide.SUFFIX, -index)
                    if best_rank is None or rank > best_rank:
                        best_rank = rank
                        best = Detection(
                            affix=affix,
                            side=side,
                            context=generalization.context,
                            pairs=pairs,
                            removals=(stored,),
                        )
        return best

    # =========================================================================
    # Segmentation
    # =========================================================================

    def segment_and_revise(self, state: LearnerState, detection: Detection, ump: Optional[UMP] = None) -> LearnerState:
        """
        Replace composite words by a morpheme entry and residual stems.

        A new suffix becomes ⟨affix, : =num num, C⟩ and a new prefix
        ⟨affix, :: =num num, C⟩; residuals are added as ⟨r, :: num -l…, σ⟩
        unless an identical entry already exists.
        """
        added: List[Sign] = []
        if not detection.known:
            category = Category.DERIVED if detection.side is AffixSide.SUFFIX else Category.LEXICAL
            added.append(
                Sign(
                    detection.affix,
                    SynType(category, (Feature.selector(self._start), Feature.base(self._start))),
                    detection.context,
                )
            )

        residual_features = self._num(*detection.licensees)
        for residual, meaning in detection.pairs:
            candidate = self._entry(residual, residual_features, meaning)
            if not self._has(state, residual, residual_features, meaning) and candidate not in added:
                added.append(candidate)

        if added or detection.removals:
            state = self._record(
                state,
                TraceEventKind.SEGMENTATION_REVISION,
                added=added,
                removed=detection.removals,
                ump=ump,
            )
            self._logger.info(
                f"✂️ t={state.clock} segmented {detection.side.value} '{detection.affix}' "
                f"(+{len(added)} / -{len(detection.removals)})"
            )
        if not detection.known:
            state = replace(
                state,
                affixes=state.affixes + (Affix(detection.affix, detection.side, detection.context),),
            )
        return state

    # =========================================================================
    # Reproduction
    # =========================================================================

    def reproduce_and_learn(self, state: LearnerState, ump: UMP) -> LearnerState:
        """
        Reproduce a UMP until the teacher accepts exactly the right exponent.

        Raises:
            LearningStuckError: If the retry cap is exhausted or a punishment
                                cannot be traced to an argument slot
        """
        for attempt in range(self._config.retry_cap + 1):
            candidates = self._transducer.generate(
                state.lexicon, ump.semantics, self._config.learner_max_leaves
            )
            feedback = self._teacher.judge(ump, candidates)

            first_time = ump not in state.rewarded
            for verdict in feedback:
                if verdict.is_reward:
                    if first_time or attempt:
                        state = self._record(state, TraceEventKind.REWARD, ump=ump)
                else:
                    state = self._record(state, TraceEventKind.PUNISH, ump=ump, offending=verdict.offending)
                    self._logger.debug(f"👎 t={state.clock} punished '{verdict.offending}' for {ump}")

            if candidates == [ump.exponent]:
                return replace(state, rewarded=state.rewarded | {ump})
            if attempt == self._config.retry_cap:
                break

            if not candidates:
                entry = self._entry(ump.exponent, self._num(), ump.semantics)
                state = self._record(state, TraceEventKind.ROTE_ADD, added=[entry], ump=ump)
                self._logger.warning(f"⚠️ t={state.clock} nothing produced for {ump}, memorised by rote")
                continue

            offending = next(v.offending for v in feedback if not v.is_reward)
            try:
                state = self.licensing_reorg(state, offending, ump)
            except UnresolvablePunishError as e:
                raise LearningStuckError(str(e), ump=ump, trace=list(state.events)) from e

        raise LearningStuckError(
            f"could not reproduce {ump} within {self._config.retry_cap} retries",
            ump=ump,
            trace=list(state.events),
        )

    # =========================================================================
    # Licensing Reorganization
    # =========================================================================

    def _legit_fillers(self, state: LearnerState, ump: UMP) -> Dict[Sign, List[Sign]]:
        """Selector entry → lexical entries it takes as plain arguments in correct derivations."""
        legit: Dict[Sign, List[Sign]] = {}
        targets = list(state.history) + ([ump] if ump not in state.history else [])
        for target in targets:
            for derivation in self._transducer.derivations_for(
                state.lexicon, target.semantics, self._config.learner_max_leaves
            ):
                if derivation.exponent != target.exponent:
                    continue
                for use in derivation.slots():
                    if use.licensed or use.filler is None:
                        continue
                    fillers = legit.setdefault(use.selector, [])
                    if use.filler not in fillers:
                        fillers.append(use.filler)
        return legit

    @staticmethod
    def _plain_slot(selector: Sign) -> Optional[int]:
        """
        Index of the selector taking a plain argument, if any.

        That is the first selector not followed by a licensor. Which
        argument ends up there is decided by licensees, not by merge order.
        """
        features = selector.features
        for index, feature in enumerate(features):
            if feature.kind is not FeatureKind.SELECTOR:
                continue
            following = features[index + 1] if index + 1 < len(features) else None
            if following is None or following.kind is not FeatureKind.LICENSOR:
                return index
        return None

    def _selector_to_restrict(self, state: LearnerState, offending: str, ump: UMP, legit) -> Sign:
        bad = [
            d
            for d in self._transducer.derivations_for(state.lexicon, ump.semantics, self._config.learner_max_leaves)
            if d.exponent == offending
        ]
        for derivation in bad:
            if derivation.is_leaf:
                for selector, fillers in legit.items():
                    if derivation.entry in fillers and self._plain_slot(selector) is not None:
                        return selector
                continue
            for use in derivation.slots():
                if use.licensed or use.filler is None:
                    continue
                if use.filler not in legit.get(use.selector, []):
                    return use.selector
        raise UnresolvablePunishError(f"no argument slot explains the punished exponent '{offending}'")

    def licensing_reorg(self, state: LearnerState, offending: str, ump: UMP) -> LearnerState:
        """
        Restrict the plain argument slot responsible for a punished exponent.

        The offending derivation either is a bare entry that legitimately
        serves as some selector's plain argument, or fills a selector's
        plain slot with an entry no correct derivation puts there. A fresh
        licensor +l is inserted right after that selector's plain slot and
        every legitimate plain filler gets the licensee -l. A filler keeps
        its plain form only when that form is a taught word or is the plain
        argument of some other selector.

        Raises:
            UnresolvablePunishError: If no slot explains the punishment
        """
        legit = self._legit_fillers(state, ump)
        selector = self._selector_to_restrict(state, offending, ump, legit)
        position = self._plain_slot(selector)
        licensee, state = self._fresh_licensee(state)

        features = list(selector.features)
        features.insert(position + 1, Feature.licensor(licensee))
        removed: List[Sign] = [selector]
        added: List[Sign] = [selector.with_features(features)]

        for filler in legit.get(selector, []):
            added.append(filler.with_features(self._num(licensee)))
            elsewhere = any(filler in fillers for other, fillers in legit.items() if other != selector)
            if not (self._taught(state, filler) or elsewhere):
                removed.append(filler)

        state = self._record(
            state,
            TraceEventKind.LICENSING_REORG,
            added=added,
            removed=removed,
            ump=ump,
            offending=offending,
        )
        self._logger.info(
            f"🔧 t={state.clock} licensing +{licensee} on {selector.display_exponent} "
            f"slot {position} after punishing '{offending}'"
        )
        return state

    @staticmethod
    def _taught(state: LearnerState, sign: Sign) -> bool:
        return any(
            u.exponent == sign.exponent and alpha_equivalent(u.semantics, sign.semantics) for u in state.history
        )

    # =========================================================================
    # Semantic Reorganization
    # =========================================================================

    def semantic_reorg(self, state: LearnerState) -> LearnerState:
        """
        Rewrite every affix entry as a void operator plus a plain head.

        Suffixes get ⟨ε, :: =num =num +l… num, λy.λx.op(y)(x)⟩ and the head
        ⟨affix, :: num, G⟩; prefixes share one operator with swapped
        arguments ⟨ε, :: =num =num +l num, λx.λy.op(y)(x)⟩ and get the head
        ⟨affix, :: num -l, G⟩. Applying it twice changes nothing.
        """
        morphemes = {affix.exponent: affix for affix in state.affixes}
        for entry in list(state.lexicon):
            affix = morphemes.get(entry.exponent)
            if affix is None or entry not in state.lexicon:
                continue
            licensors = _split_affix_features(entry.features, self._start)
            factored = _factor(entry.semantics)
            if licensors is None or factored is None:
                continue

            op, fixed = factored
            suffix = bool(licensors) or entry.category is Category.DERIVED
            if suffix:
                state = self._reorganize_suffix(state, entry, op, fixed, licensors)
            else:
                state = self._reorganize_prefix(state, entry, op, fixed)
        return state

    def _reorganize_suffix(self, state, entry: Sign, op: Term, fixed: Term, licensors: Tuple[str, ...]) -> LearnerState:
        added: List[Sign] = []
        head_licensees: Tuple[str, ...] = ()
        for _, first, second in self._operators(state, op, swapped=False):
            if second == licensors:
                head_licensees = first
                break
        else:
            selector = Feature.selector(self._start)
            operator_features = (selector, selector) + tuple(Feature.licensor(ident) for ident in licensors) + (
                Feature.base(self._start),
            )
            added.append(self._entry("", operator_features, curried_operator(op)))

        head_features = self._num(*head_licensees)
        if not self._has(state, entry.exponent, head_features, fixed):
            added.append(self._entry(entry.exponent, head_features, fixed))

        state = self._record(state, TraceEventKind.SEMANTIC_REORG, added=added, removed=[entry])
        self._logger.info(f"🔄 t={state.clock} suffix '{entry.exponent}' reorganized into operator + head")
        return state

    def _reorganize_prefix(self, state, entry: Sign, op: Term, fixed: Term) -> LearnerState:
        added: List[Sign] = []
        licensee = None
        for _, _, second in self._operators(state, op, swapped=True):
            if len(second) == 1:
                licensee = second[0]
                break
        if licensee is None:
            licensee, state = self._fresh_licensee(state)
            selector = Feature.selector(self._start)
            added.append(
                self._entry(
                    "",
                    (selector, selector, Feature.licensor(licensee), Feature.base(self._start)),
                    curried_operator(op, swapped=True),
                )
            )

        head_features = self._num(licensee)
        if not self._has(state, entry.exponent, head_features, fixed):
            added.append(self._entry(entry.exponent, head_features, fixed))

        state = self._record(state, TraceEventKind.SEMANTIC_REORG, added=added, removed=[entry])
        self._logger.info(f"🔄 t={state.clock} prefix '{entry.exponent}' reorganized onto -{licensee}")
        return state

    # =========================================================================
    # Training Loop
    # =========================================================================

    def regression(self, state: LearnerState) -> LearnerState:
        """
        Reproduce every UMP seen so far until a whole pass changes nothing.

        Raises:
            LearningStuckError: If the passes do not settle
        """
        for _ in range(self._config.retry_cap):
            before = state.lexicon
            for ump in state.history:
                state = self.reproduce_and_learn(state, ump)
            if state.lexicon == before:
                return state
        raise LearningStuckError(
            f"regression check did not settle at t={state.clock}", trace=list(state.events)
        )

    def step(self, state: LearnerState, ump: UMP) -> LearnerState:
        """One turn of the counting loop."""
        state = self.observe(state, ump)
        state = self.regression(state)
        while True:
            reorganized = self.semantic_reorg(state)
            if reorganized.lexicon == state.lexicon:
                return reorganized
            state = self.regression(reorganized)

    def run(self, max_n: int, state: Optional[LearnerState] = None) -> LearnerState:
        """Count from 1 to max_n and return the final state."""
        if max_n < 1:
            raise ValueError(f"max_n must be ≥ 1, got {max_n}")
        state = state or self.initial_state()
        for ump in self._teacher.stream(max_n):
            state = self.step(state, ump)
        self._logger.info(
            f"✅ Learned {len(state.lexicon)} entries from {state.clock} UMPs ({len(state.events)} events)"
        )
        return state

    def train(self, max_n: int) -> Tuple[Tuple[Sign, ...], List[TraceEvent]]:
        """
        Count from 1 to max_n.

        Returns:
            Tuple of (final lexicon, full trace)
        """
        state = self.run(max_n)
        return state.lexicon, list(state.events)

    def round_trip_failures(
        self, lexicon: Sequence[Sign], max_n: int, max_leaves: Optional[int] = None
    ) -> List[int]:
        """
        Numbers in 1..max_n the lexicon does not round-trip.

        n round-trips when generating its canonical meaning yields exactly
        the teacher's exponent and parsing that exponent yields a term
        evaluating to n.

        Args:
            lexicon: Lexicon to check
            max_n: Highest number checked
            max_leaves: Leaf bound (default: the query bound of the run config)

        Raises:
            ValueError: If max_leaves < 1
        """
        bound = self._config.max_leaves if max_leaves is None else max_leaves
        if bound < 1:
            raise ValueError(f"max_leaves must be ≥ 1, got {bound}")
        meanings_by_exponent: Dict[str, List[Term]] = defaultdict(list)
        for derivation in self._transducer.enumerate(lexicon, bound):
            meanings_by_exponent[derivation.exponent].append(derivation.semantics)

        failures: List[int] = []
        for n in range(1, max_n + 1):
            ump = self._teacher.ump_for(n)
            generated = self._transducer.generate(lexicon, ump.semantics, bound)
            values = set()
            for meaning in meanings_by_exponent.get(ump.exponent, ()):
                try:
                    values.add(evaluate(meaning, self._config.reduction_budget))
                except NotANumberError:
                    continue
            if generated != [ump.exponent] or n not in values:
                failures.append(n)

        if failures:
            self._logger.warning(f"⚠️ {len(failures)} of {max_n} numbers fail the round trip: {failures[:10]}")
        return failures


# =============================================================================
# Factory Function
# =============================================================================


def create_numeral_learner(
    run_config: Optional[RunConfig] = None,
    config_manager=None,
    logging_manager=None,
    teacher: Optional[NumeralTeacher] = None,
    transducer: Optional[UtteranceMeaningTransducer] = None,
) -> NumeralLearner:
    """
    Factory function to create a NumeralLearner.

    Following Clean Architecture v5.2 Rule #1: Factory Functions.

    Args:
        run_config: Run configuration (built from config_manager when omitted)
        config_manager: Optional ConfigManager
        logging_manager: Optional LoggingConfigManager
        teacher: Teacher to learn from (created from the run config when omitted)
        transducer: Transducer to reproduce with (created when omitted)

    Returns:
        Configured NumeralLearner instance
    """
    if run_config is None:
        run_config = RunConfig.from_config(config_manager) if config_manager else RunConfig()

    teacher = teacher or create_numeral_teacher(
        logging_manager=logging_manager,
        orthography=run_config.orthography,
        max_number=run_config.max_number,
        substitutions=run_config.substitutions,
    )
    transducer = transducer or create_transducer(
        logging_manager=logging_manager,
        max_leaves=run_config.max_leaves,
        chart_cap=run_config.chart_cap,
        reduction_budget=run_config.reduction_budget,
        start=run_config.start_category,
    )

    logger.debug(f"🏭 Created learner (retry_cap={run_config.retry_cap})")
    return NumeralLearner(
        teacher=teacher,
        transducer=transducer,
        run_config=run_config,
        logging_manager=logging_manager,
    )


__all__ = [
    "LearnerState",
    "Detection",
    "NumeralLearner",
    "create_numeral_learner",
]
