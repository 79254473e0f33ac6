"""
Tests for the lambda term algebra: codec, reduction, evaluation,
alpha-equivalence, anti-unification and operator factoring.
"""

import random

import pytest

from src.models.enums import ReductionStrategy
from src.models.terms import ADD, MUL, App, BasePow, Lam, NumLit, Var, add, mul
from src.services.term_algebra import (
    alpha_equivalent,
    alpha_key,
    anti_unify,
    beta_reduce,
    curried_operator,
    evaluate,
    factor_operator,
    format_term,
    free_vars,
    fresh_name,
    is_normal,
    match_context,
    parse_term,
    same_meaning,
    substitute,
)
from src.services.teacher_service import canonical_term
from src.utils.errors import (
    IllFormedTermError,
    NoAbstractionError,
    NonTerminationError,
    NotANumberError,
    TermSyntaxError,
)

TEN = BasePow(1)
TEEN_CONTEXT = Lam("x", add(mul(TEN, NumLit(1)), Var("x")))


def random_term(rng: random.Random, depth: int, bound: tuple = ()) -> object:
    """Random well-formed term; variables are drawn from the enclosing binders."""
    choices = ["num", "pow", "add", "mul"]
    if bound:
        choices.append("var")
    if depth > 0:
        choices += ["lam", "app", "binary", "binary"]
    kind = rng.choice(choices)
    if kind == "num":
        return NumLit(rng.randint(0, 20))
    if kind == "pow":
        return BasePow(rng.randint(0, 3))
    if kind == "add":
        return ADD
    if kind == "mul":
        return MUL
    if kind == "var":
        return Var(rng.choice(bound))
    if kind == "lam":
        name = rng.choice(["x", "y", "z", "v1"])
        return Lam(name, random_term(rng, depth - 1, bound + (name,)))
    if kind == "binary":
        build = add if rng.random() < 0.5 else mul
        return build(random_term(rng, depth - 1, bound), random_term(rng, depth - 1, bound))
    return App(random_term(rng, depth - 1, bound), random_term(rng, depth - 1, bound))


@pytest.mark.unit
class TestTextCodec:
    def test_round_trip_random_terms(self):
        rng = random.Random(7)
        for _ in range(300):
            term = random_term(rng, 4)
            assert parse_term(format_term(term)) == term

    def test_canonical_rendering(self):
        assert format_term(TEEN_CONTEXT) == "(lam x (add (mul 10^1 1) x))"
        assert format_term(App(ADD, NumLit(1))) == "(app add 1)"
        assert str(BasePow(2)) == "10^2"

    def test_whitespace_is_insignificant(self):
        assert parse_term("  ( add\t1   2 )\n") == add(NumLit(1), NumLit(2))

    @pytest.mark.parametrize(
        "text",
        ["", "(add 1", "(foo 1 2)", "lam", "1 2", "(lam 3 x)", "(add 1 2))", "#", "(lam add x)"],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(TermSyntaxError):
            parse_term(text)

    def test_syntax_error_carries_position(self):
        with pytest.raises(TermSyntaxError) as exc_info:
            parse_term("(add 1 #)")
        assert exc_info.value.position == 7


@pytest.mark.unit
class TestReduction:
    def test_beta_reduces_affix_application(self):
        term = App(TEEN_CONTEXT, NumLit(3))
        assert beta_reduce(term) == add(mul(TEN, NumLit(1)), NumLit(3))
        assert evaluate(term) == 13

    def test_strategies_agree_on_normal_forms(self):
        rng = random.Random(11)
        for _ in range(100):
            term = random_term(rng, 4)
            try:
                normal = beta_reduce(term, ReductionStrategy.NORMAL, max_steps=500)
                applicative = beta_reduce(term, ReductionStrategy.APPLICATIVE, max_steps=500)
            except NonTerminationError:
                continue
            assert alpha_equivalent(normal, applicative)
            assert is_normal(normal)

    def test_reduction_is_idempotent(self):
        term = App(App(curried_operator(ADD), NumLit(20)), NumLit(3))
        once = beta_reduce(term)
        assert beta_reduce(once) == once

    def test_budget_exhaustion(self):
        omega = parse_term("(app (lam x (app x x)) (lam x (app x x)))")
        with pytest.raises(NonTerminationError) as exc_info:
            beta_reduce(omega, max_steps=50)
        assert exc_info.value.budget == 50

    def test_unbound_variable_rejected(self):
        with pytest.raises(IllFormedTermError):
            beta_reduce(add(Var("x"), NumLit(1)))

    def test_substitution_avoids_capture(self):
        # (λy. x y)[x := y] must not capture the free y
        result = substitute(Lam("y", App(Var("x"), Var("y"))), "x", Var("y"))
        assert free_vars(result) == frozenset({"y"})
        assert not alpha_equivalent(result, Lam("y", App(Var("y"), Var("y"))))

    def test_fresh_name_skips_taken_and_keywords(self):
        assert fresh_name("x", {"x", "x1"}) == "x2"
        assert fresh_name("lam", set()) == "lam1"


@pytest.mark.unit
class TestEvaluation:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("7", 7),
            ("10^1", 10),
            ("(add (mul 10^1 1) 2)", 12),
            ("(add (mul 10^1 9) 9)", 99),
            ("(app (app (lam y (lam x (add y x))) (mul 10^1 2)) 3)", 23),
        ],
    )
    def test_values(self, text, value):
        assert evaluate(parse_term(text)) == value

    @pytest.mark.parametrize("text", ["(lam x x)", "add", "(app add 1)"])
    def test_non_numbers(self, text):
        with pytest.raises(NotANumberError):
            evaluate(parse_term(text))


@pytest.mark.unit
class TestAlphaEquivalence:
    def test_bound_names_do_not_matter(self):
        first = parse_term("(lam y (lam x (add y x)))")
        second = parse_term("(lam a (lam b (add a b)))")
        assert alpha_equivalent(first, second)
        assert alpha_key(first) == alpha_key(second)

    def test_argument_order_matters(self):
        assert not alpha_equivalent(
            parse_term("(lam y (lam x (add y x)))"),
            parse_term("(lam y (lam x (add x y)))"),
        )

    def test_same_meaning_compares_normal_forms(self):
        assert same_meaning(App(TEEN_CONTEXT, NumLit(4)), parse_term("(add (mul 10^1 1) 4)"))


@pytest.mark.unit
class TestAntiUnification:
    def test_teen_context(self):
        result = anti_unify(parse_term("(add (mul 10^1 1) 3)"), parse_term("(add (mul 10^1 1) 4)"))
        assert result is not None
        assert alpha_equivalent(result.context, TEEN_CONTEXT)
        assert (result.arg1, result.arg2) == (NumLit(3), NumLit(4))

    def test_subterm_filler(self):
        result = anti_unify(parse_term("(add (mul 10^1 2) 3)"), parse_term("(add (mul 10^1 2) 4)"))
        assert format_term(result.context) == "(lam x (add (mul 10^1 2) x))"

    def test_identical_terms_raise(self):
        with pytest.raises(NoAbstractionError):
            anti_unify(NumLit(3), NumLit(3))

    def test_root_difference_has_no_context(self):
        assert anti_unify(NumLit(3), NumLit(4)) is None

    def test_two_distinct_holes_rejected(self):
        assert anti_unify(parse_term("(add 1 2)"), parse_term("(add 3 4)")) is None

    def test_repeated_difference_shares_one_hole(self):
        result = anti_unify(parse_term("(add 2 2)"), parse_term("(add 5 5)"))
        assert format_term(result.context) == "(lam x (add x x))"

    def test_context_reapplies_to_inputs(self):
        first, second = parse_term("(add (mul 10^1 1) 8)"), parse_term("(add (mul 10^1 1) 9)")
        result = anti_unify(first, second)
        assert beta_reduce(App(result.context, result.arg1)) == first
        assert beta_reduce(App(result.context, result.arg2)) == second

    def test_consecutive_teens_share_the_teen_context(self):
        for n in range(13, 19):
            result = anti_unify(canonical_term(n), canonical_term(n + 1))
            assert alpha_equivalent(result.context, TEEN_CONTEXT), n
            assert (result.arg1, result.arg2) == (NumLit(n - 10), NumLit(n - 9))

    def test_consecutive_numbers_twenty_to_ninety_nine(self):
        for n in range(20, 99):
            first, second = canonical_term(n), canonical_term(n + 1)
            result = anti_unify(first, second)
            tens, units = divmod(n, 10)
            if units in (0, 9):
                # decade boundaries differ in more than one position
                assert result is None, n
                continue
            assert format_term(result.context) == f"(lam x (add (mul 10^1 {tens}) x))", n
            assert beta_reduce(App(result.context, result.arg1)) == first
            assert beta_reduce(App(result.context, result.arg2)) == second

    def test_decades_share_the_ty_context(self):
        result = anti_unify(canonical_term(20), canonical_term(30))
        assert format_term(result.context) == "(lam x (mul 10^1 x))"
        assert (result.arg1, result.arg2) == (NumLit(2), NumLit(3))


@pytest.mark.unit
class TestMatchingAndFactoring:
    def test_match_context_finds_filler(self):
        assert match_context(TEEN_CONTEXT, parse_term("(add (mul 10^1 1) 7)")) == NumLit(7)

    def test_match_context_rejects_non_instances(self):
        assert match_context(TEEN_CONTEXT, NumLit(7)) is None
        assert match_context(TEEN_CONTEXT, parse_term("(add (mul 10^1 2) 7)")) is None

    def test_factor_operator_splits_teen_context(self):
        operator, fixed = factor_operator(TEEN_CONTEXT)
        assert alpha_equivalent(operator, parse_term("(lam y (lam x (add y x)))"))
        assert fixed == mul(TEN, NumLit(1))

    def test_factor_operator_needs_hole_on_the_right(self):
        assert factor_operator(parse_term("(lam x (add x 3))")) is None
        assert factor_operator(NumLit(3)) is None

    def test_swapped_operator(self):
        swapped = curried_operator(MUL, swapped=True)
        assert evaluate(App(App(swapped, NumLit(2)), TEN)) == 20
        assert format_term(swapped) == "(lam x (lam y (mul y x)))"
