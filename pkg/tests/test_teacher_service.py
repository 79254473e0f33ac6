"""
Tests for the counting teacher: surface forms, canonical terms and verdicts.
"""

import pytest

from src.models.enums import Orthography, Verdict
from src.models.learning import Feedback, UMP
from src.models.terms import BasePow, NumLit
from src.services.teacher_service import (
    canonical_term,
    create_numeral_teacher,
    paper_exponent,
)
from src.services.term_algebra import evaluate, format_term
from src.utils.errors import NumberOutOfRangeError


@pytest.mark.unit
class TestSurfaceForms:
    @pytest.mark.parametrize(
        "n,exponent",
        [
            (1, "one"),
            (9, "nine"),
            (10, "ten"),
            (13, "thirteen"),
            (18, "eighteen"),
            (20, "twenty"),
            (21, "twentyone"),
            (40, "fourty"),
            (42, "fourtytwo"),
            (99, "ninetynine"),
        ],
    )
    def test_paper_orthography(self, n, exponent):
        assert paper_exponent(n) == exponent

    def test_standard_orthography_substitutes(self):
        teacher = create_numeral_teacher(orthography=Orthography.STANDARD)
        assert teacher.exponent_for(42) == "fortytwo"
        assert teacher.exponent_for(14) == "fourteen"

    @pytest.mark.parametrize("n", [0, 100, -3])
    def test_unnamed_numbers(self, n):
        with pytest.raises(NumberOutOfRangeError):
            paper_exponent(n)


@pytest.mark.unit
class TestCanonicalTerms:
    @pytest.mark.parametrize(
        "n,text",
        [
            (7, "7"),
            (10, "10^1"),
            (13, "(add (mul 10^1 1) 3)"),
            (20, "(mul 10^1 2)"),
            (99, "(add (mul 10^1 9) 9)"),
            (100, "10^2"),
            (305, "(add (mul 10^2 3) 5)"),
        ],
    )
    def test_shapes(self, n, text):
        assert format_term(canonical_term(n)) == text

    def test_terms_evaluate_to_their_number(self):
        wrong = [n for n in range(1, 10_000) if evaluate(canonical_term(n)) != n]
        assert wrong == []

    def test_literal_forms(self):
        assert canonical_term(1) == NumLit(1)
        assert canonical_term(1000) == BasePow(3)

    @pytest.mark.parametrize("n", [0, 10_000])
    def test_out_of_range(self, n):
        with pytest.raises(NumberOutOfRangeError):
            canonical_term(n)


@pytest.mark.unit
class TestTeacher:
    def test_stream_counts_upwards(self, teacher):
        umps = list(teacher.stream(12))
        assert [u.exponent for u in umps][:3] == ["one", "two", "three"]
        assert umps[-1] == UMP("twelve", canonical_term(12))

    def test_ump_outside_range(self):
        teacher = create_numeral_teacher(max_number=20)
        with pytest.raises(NumberOutOfRangeError):
            teacher.ump_for(21)

    def test_invalid_range_rejected(self):
        with pytest.raises(NumberOutOfRangeError):
            create_numeral_teacher(max_number=100)

    def test_judge_rewards_exact_match(self, teacher):
        ump = teacher.ump_for(13)
        assert teacher.judge(ump, ["thirteen"]) == [Feedback.reward()]

    def test_judge_punishes_each_wrong_form(self, teacher):
        ump = teacher.ump_for(13)
        verdicts = teacher.judge(ump, ["thirteen", "threeteen"])
        assert [v.verdict for v in verdicts] == [Verdict.REWARD, Verdict.PUNISH]
        assert verdicts[1].offending == "threeteen"
        assert str(verdicts[1]) == "Punish(threeteen)"

    def test_silence_is_punished(self, teacher):
        assert teacher.judge(teacher.ump_for(5), []) == [Feedback.punish("")]

    def test_factory_reads_teacher_section(self, config_manager):
        teacher = create_numeral_teacher(config_manager=config_manager)
        assert teacher.max_number == 23
        assert teacher.orthography is Orthography.PAPER
