"""
Tests for the utterance-meaning transducer: bounded enumeration,
generation, parsing, greedy replay and an exhaustive-closure oracle.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Tuple

import pytest

from src.models.enums import Category, RuleName
from src.models.grammar import Expression, Feature, Sign, SynType
from src.models.terms import Lam, NumLit, Var, add
from src.services.grammar_engine import (
    apply_merge,
    apply_move,
    expression_key,
    is_complete,
    validate_syntype,
)
from src.services.teacher_service import canonical_term
from src.services.term_algebra import alpha_key, format_term, parse_term
from src.services.transducer import create_transducer, derive, enumerate_derivations
from src.utils.errors import ChartLimitError, GrammarError
from tests.conftest import entry


@pytest.mark.unit
class TestGenerate:
    def test_simplex_lexicon_names_its_numbers(self, transducer, simplex_lexicon):
        assert transducer.generate(simplex_lexicon, canonical_term(12)) == ["twelve"]
        assert transducer.generate(simplex_lexicon, canonical_term(10)) == ["ten"]
        assert transducer.generate(simplex_lexicon, canonical_term(13)) == []

    def test_free_suffix_overgenerates(self, transducer, teen_segmented_lexicon):
        assert transducer.generate(teen_segmented_lexicon, canonical_term(13)) == ["thirteen", "threeteen"]

    def test_licensing_blocks_free_forms(self, transducer, licensed_lexicon):
        assert transducer.generate(licensed_lexicon, canonical_term(13)) == ["thirteen"]
        assert transducer.generate(licensed_lexicon, canonical_term(14)) == ["fourteen"]
        assert transducer.generate(licensed_lexicon, canonical_term(3)) == ["three"]

    def test_void_operator_lexicon(self, transducer, operator_lexicon):
        assert transducer.generate(operator_lexicon, canonical_term(13)) == ["thirteen"]
        assert transducer.generate(operator_lexicon, canonical_term(19)) == ["nineteen"]
        assert transducer.generate(operator_lexicon, canonical_term(10)) == ["ten"]

    def test_meaning_is_matched_after_reduction(self, transducer, licensed_lexicon):
        redex = parse_term("(app (lam x (add (mul 10^1 1) x)) 5)")
        assert transducer.generate(licensed_lexicon, redex) == ["fifteen"]


@pytest.mark.unit
class TestParse:
    def test_parse_returns_normal_forms(self, transducer, operator_lexicon):
        meanings = transducer.parse(operator_lexicon, "thirteen")
        assert [format_term(m) for m in meanings] == ["(add (mul 10^1 1) 3)"]

    def test_parse_of_blocked_form_is_empty(self, transducer, licensed_lexicon):
        assert transducer.parse(licensed_lexicon, "threeteen") == []

    def test_parse_of_overgenerated_form(self, transducer, teen_segmented_lexicon):
        meanings = transducer.parse(teen_segmented_lexicon, "threeteen")
        assert [format_term(m) for m in meanings] == ["(add (mul 10^1 1) 3)"]

    def test_parse_rejects_empty_exponent(self, transducer, simplex_lexicon):
        with pytest.raises(ValueError):
            transducer.parse(simplex_lexicon, "")

    def test_parse_agrees_with_enumeration(self, transducer, licensed_lexicon):
        expected = {
            alpha_key(d.semantics) for d in transducer.enumerate(licensed_lexicon) if d.exponent == "seventeen"
        }
        assert {alpha_key(m) for m in transducer.parse(licensed_lexicon, "seventeen")} == expected


@pytest.mark.unit
class TestEnumeration:
    def test_leaf_bound_limits_derivations(self, operator_lexicon):
        two_leaves = list(enumerate_derivations(operator_lexicon, max_leaves=2))
        simplex = {s.exponent for s in operator_lexicon if is_complete(Expression.lexical(s))}
        assert {d.exponent for d in two_leaves} == simplex
        three_leaves = {d.exponent for d in enumerate_derivations(operator_lexicon, max_leaves=3)}
        assert "thirteen" in three_leaves

    def test_derivations_ordered_by_leaf_count(self, licensed_lexicon):
        counts = [d.leaf_count for d in enumerate_derivations(licensed_lexicon, max_leaves=3)]
        assert counts == sorted(counts)

    def test_invalid_leaf_bound(self, simplex_lexicon):
        with pytest.raises(ValueError):
            list(enumerate_derivations(simplex_lexicon, max_leaves=0))

    def test_chart_cap(self, simplex_lexicon):
        with pytest.raises(ChartLimitError) as exc_info:
            list(enumerate_derivations(simplex_lexicon, chart_cap=5))
        assert exc_info.value.cap == 5

    def test_enumeration_is_cached_per_lexicon(self, transducer, licensed_lexicon):
        transducer.enumerate(licensed_lexicon)
        transducer.generate(licensed_lexicon, canonical_term(16))
        assert transducer.stats == {"enumerations": 1, "cache_hits": 1}
        transducer.clear_cache()
        transducer.enumerate(licensed_lexicon)
        assert transducer.stats["enumerations"] == 2

    def test_slots_report_selector_positions(self, transducer, operator_lexicon):
        (derivation,) = [d for d in transducer.enumerate(operator_lexicon) if d.exponent == "thirteen"]
        slots = derivation.slots()
        assert [(slot.selector.exponent, slot.position) for slot in slots] == [("", 0), ("", 1)]
        assert [slot.filler.exponent for slot in slots] == ["teen", "thir"]
        assert [slot.licensed for slot in slots] == [False, True]

    def test_explicit_leaf_bound_is_respected(self, transducer, operator_lexicon):
        assert transducer.generate(operator_lexicon, canonical_term(13), max_leaves=1) == []
        assert transducer.parse(operator_lexicon, "thirteen", max_leaves=2) == []
        assert transducer.generate(operator_lexicon, canonical_term(13), max_leaves=3) == ["thirteen"]

    @pytest.mark.parametrize("bound", [0, -1])
    def test_non_positive_leaf_bound_rejected(self, transducer, operator_lexicon, bound):
        with pytest.raises(ValueError):
            transducer.generate(operator_lexicon, canonical_term(13), max_leaves=bound)
        with pytest.raises(ValueError):
            transducer.parse(operator_lexicon, "thirteen", max_leaves=bound)
        with pytest.raises(ValueError):
            create_transducer(max_leaves=bound)

    def test_cache_is_shared_safely_between_threads(self, transducer, simplex_lexicon, licensed_lexicon):
        lexicons = [simplex_lexicon, licensed_lexicon] * 8
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda lexicon: transducer.generate(lexicon, canonical_term(12)), lexicons))
        assert results == [["twelve"]] * len(lexicons)
        assert transducer.stats == {"enumerations": 2, "cache_hits": len(lexicons) - 2}


@pytest.mark.unit
class TestReplay:
    def test_void_operator_replay(self, operator_lexicon):
        by_key = {(s.exponent, str(s.syntype)): s for s in operator_lexicon}
        items = [by_key[("", ":: =num =num +k num")], by_key[("teen", ":: num")], by_key[("thir", ":: num -k")]]
        replay = derive(items)
        assert replay.complete
        assert [step.rule for step in replay.steps] == [RuleName.MERGE_1, RuleName.MERGE_3, RuleName.MOVE_1]
        assert str(replay.derivation.expression) == "⟨thirteen, : num, (add (mul 10^1 1) 3)⟩"

    def test_licensing_head_replay(self):
        replay = derive(
            [
                entry("teen : =num +k num ; (lam x (add (mul 10^1 1) x))"),
                entry("thir :: num -k ; 3"),
            ]
        )
        assert [step.rule for step in replay.steps] == [RuleName.MERGE_3, RuleName.MOVE_1]
        assert replay.complete

    def test_free_suffix_replay(self):
        replay = derive([entry("teen : =num num ; (lam x (add (mul 10^1 1) x))"), entry("thir :: num ; 3")])
        assert [step.rule for step in replay.steps] == [RuleName.MERGE_2]
        assert replay.derivation.exponent == "thirteen"

    def test_stuck_replay(self):
        replay = derive(
            [
                entry("teen : =num +k num ; (lam x (add (mul 10^1 1) x))"),
                entry("three :: num ; 3"),
            ]
        )
        assert not replay.complete
        assert replay.consumed == replay.total == 2
        assert replay.derivation.exponent == "threeteen"

    def test_unmergeable_items_stop_early(self):
        replay = derive([entry("one :: num ; 1"), entry("two :: num ; 2"), entry("three :: num ; 3")])
        assert not replay.complete
        assert replay.consumed == 1
        assert replay.steps == []

    def test_step_rendering(self):
        replay = derive([entry("teen : =num num ; (lam x (add (mul 10^1 1) x))"), entry("thir :: num ; 3")])
        assert str(replay.steps[0]) == (
            "merge-2: ⟨teen, : =num num, (lam x (add (mul 10^1 1) x))⟩ ; ⟨thir, :: num, 3⟩"
            " => ⟨thirteen, : num, (add (mul 10^1 1) 3)⟩"
        )

    def test_replay_needs_items(self):
        with pytest.raises(ValueError):
            derive([])


# =============================================================================
# Exhaustive Closure Oracle
# =============================================================================

EXPONENTS = ("", "a", "b", "ab")


def _random_sign(rng: random.Random) -> Sign:
    prefix = [rng.choice([Feature.selector("num"), Feature.licensor("k")]) for _ in range(rng.randint(0, 2))]
    suffix = [Feature.licensee("k")] * rng.randint(0, 1)
    features = tuple(prefix) + (Feature.base("num"),) + tuple(suffix)
    semantics = NumLit(rng.randint(1, 3))
    for name in reversed(["x", "y"][: len(prefix)]):
        semantics = Lam(name, add(Var(name), semantics))
    sign = Sign(rng.choice(EXPONENTS), SynType(Category.LEXICAL, features), semantics)
    assert validate_syntype(sign.syntype)
    return sign


def _closure(lexicon: Tuple[Sign, ...], max_leaves: int) -> set:
    """Every expression reachable within the leaf bound, by naive fixpoint iteration."""
    best: Dict[tuple, Tuple[Expression, int]] = {}
    for sign in lexicon:
        expression = Expression.lexical(sign)
        best.setdefault(expression_key(expression), (expression, 1))

    changed = True
    while changed:
        changed = False
        items = list(best.values())
        produced = []
        for expression, leaves in items:
            try:
                produced.append((apply_move(expression)[1], leaves))
            except GrammarError:
                pass
            for other, other_leaves in items:
                if leaves + other_leaves > max_leaves:
                    continue
                try:
                    produced.append((apply_merge(expression, other)[1], leaves + other_leaves))
                except GrammarError:
                    pass
        for expression, leaves in produced:
            key = expression_key(expression)
            if key not in best or best[key][1] > leaves:
                best[key] = (expression, leaves)
                changed = True

    return {
        (expression.head.exponent, alpha_key(expression.head.semantics))
        for expression, _ in best.values()
        if is_complete(expression)
    }


@pytest.mark.slow
def test_enumeration_matches_exhaustive_closure():
    rng = random.Random(2024)
    for _ in range(100):
        lexicon = tuple(_random_sign(rng) for _ in range(rng.randint(2, 4)))
        found = {(d.exponent, alpha_key(d.semantics)) for d in enumerate_derivations(lexicon, max_leaves=4)}
        assert found == _closure(lexicon, 4), [str(s) for s in lexicon]


def test_factory_reads_transducer_section(config_manager):
    transducer = create_transducer(config_manager=config_manager)
    assert transducer.max_leaves == config_manager.get("transducer", "max_leaves")
    assert transducer.start == "num"
