import math

from hypothesis import given, settings
from hypothesis import strategies as st

from synthqa.model import AnswerSet
from synthqa.scoring import (
    ScoreRecord,
    exact_match,
    extract_answer,
    format_reward,
    groundedness,
    groundedness_fractions,
    normalize,
    parse_answer_set,
    reward_for,
    set_f1,
    stratify,
    summarize,
    token_f1,
)


class TestExtractAnswer:
    def test_single_tag(self):
        assert extract_answer("...<answer>Paris</answer>") == "Paris"

    def test_last_tag_wins(self):
        assert extract_answer("<answer>A</answer> ... <answer>B</answer>") == "B"

    def test_absence_is_none(self):
        assert extract_answer("no tags at all") is None

    def test_unclosed_trailing_tag_is_none(self):
        assert extract_answer("text <answer>dangling") is None

    def test_multiline_content(self):
        assert extract_answer("<answer>a\nb</answer>") == "a\nb"

    def test_empty_content_is_empty_string(self):
        assert extract_answer("<answer></answer>") == ""


class TestNormalize:
    def test_article_and_punctuation_strip(self):
        assert normalize("The Eiffel Tower.") == "eiffel tower"

    def test_whitespace_collapse(self):
        assert normalize("  dominoes ") == "dominoes"

    def test_date_strings_lose_punctuation(self):
        # which is why exact_match compares pre-normalization
        assert normalize("0959-03-22") == "0959 03 22"


class TestExactMatch:
    def test_equal_numbers(self):
        assert exact_match("8", "8") == 1

    def test_case_fold(self):
        assert exact_match("mother", "Mother") == 1

    def test_mismatch(self):
        assert exact_match("7", "8") == 0

    def test_dates_survive(self):
        assert exact_match(" 0959-03-22", "0959-03-22") == 1
        assert exact_match("0959 03 22", "0959-03-22") == 0


class TestSetF1:
    def test_identity(self):
        gold = AnswerSet.of("Barabara Beltran", "Vicki Hackworth")
        assert set_f1(gold, gold) == 1.0

    def test_half_overlap(self):
        assert set_f1(AnswerSet.of("a", "b"), AnswerSet.of("b", "c")) == 0.5

    def test_empty_vs_nonempty(self):
        assert set_f1(AnswerSet.of(), AnswerSet.of("x")) == 0.0
        assert set_f1(AnswerSet.of("x"), AnswerSet.of()) == 0.0

    def test_both_empty(self):
        assert set_f1(AnswerSet.of(), AnswerSet.of()) == 1.0

    def test_parse_splits_on_commas_and_normalizes(self):
        parsed = parse_answer_set("Barabara  Beltran , VICKI hackworth")
        assert set_f1(parsed, AnswerSet.of("Barabara Beltran", "Vicki Hackworth")) == 1.0

    def test_duplicates_in_prediction_do_not_help(self):
        assert set_f1(parse_answer_set("b,b,b"), AnswerSet.of("b", "c")) == set_f1(
            parse_answer_set("b"), AnswerSet.of("b", "c")
        )


class TestTokenF1:
    def test_article_stripped_equality(self):
        assert token_f1("the Eiffel Tower", "Eiffel Tower") == 1.0

    def test_multiset_two_thirds(self):
        assert math.isclose(token_f1("New York City", "York City Hall"), 2 / 3)

    def test_empty_prediction(self):
        assert token_f1("", "x") == 0.0

    def test_multiplicity_counts(self):
        # 'x x' vs 'x': P = 1/2, R = 1, F1 = 2/3
        assert math.isclose(token_f1("x x", "x"), 2 / 3)


class TestFormatReward:
    def test_tag_pair_scores_one(self):
        assert format_reward("blah <answer>yes</answer> blah") == 1

    def test_no_tags(self):
        assert format_reward("nothing here") == 0

    def test_opening_tag_only(self):
        assert format_reward("<answer>oops") == 0


class TestGroundedness:
    def test_all_present(self):
        assert groundedness("first Rome then Paris", ["Rome", "Paris"]) == [True, True]

    def test_empty_trace(self):
        assert groundedness("", ["Rome", "Paris"]) == [False, False]

    def test_only_second(self):
        assert groundedness("remember Paris", ["Rome", "Paris"]) == [False, True]

    def test_substring_after_normalization(self):
        assert groundedness("visited The Eiffel Tower.", ["Eiffel Tower"]) == [True]

    def test_fractions_aggregate_by_position(self):
        rows = groundedness_fractions(
            [("a b", ["a", "z"]), ("b", ["a", "b"]), ("a", ["a"])]
        )
        assert rows == [(1, 2 / 3, 3), (2, 1 / 2, 2)]


class TestRewardFor:
    def test_missing_tags_give_zero(self):
        for kind in ("exact_match", "set_f1", "token_f1"):
            extracted, reward = reward_for(kind, "no tags", AnswerSet.of("x"))
            assert extracted is None and reward == 0.0

    def test_format_only_ignores_content(self):
        _, reward = reward_for("format_only", "<answer>garbage</answer>", AnswerSet.of("x"))
        assert reward == 1.0


class TestStratify:
    def _record(self, reward, difficulty, step=None):
        return ScoreRecord(
            sample_id="s",
            raw_generation="",
            extracted=None,
            reward=reward,
            reward_kind="exact_match",
            difficulty=difficulty,
            checkpoint_step=step,
        )

    def test_constant_bucket(self):
        report = stratify([self._record(1.0, 3) for _ in range(5)])
        assert report.buckets[3].mean == 1.0
        assert report.buckets[3].standard_error == 0.0
        assert report.buckets[3].n == 5

    def test_one_zero_bucket_uses_sample_stddev(self):
        report = stratify([self._record(1.0, 2), self._record(0.0, 2)])
        b = report.buckets[2]
        assert math.isclose(b.mean, 0.5)
        # sample stddev of {1,0} is 0.7071; / sqrt(2) = 0.5
        assert math.isclose(b.standard_error, 0.5)

    def test_four_record_overall(self):
        rewards = [1.0, 1.0, 0.0, 0.0]
        report = stratify([self._record(r, 1) for r in rewards])
        assert math.isclose(report.overall.mean, 0.5)
        assert math.isclose(report.overall.standard_error, 0.28867513459, rel_tol=1e-9)

    def test_overall_n_is_record_count(self):
        records = [self._record(1.0, d) for d in (1, 1, 2, 3)]
        report = stratify(records)
        assert report.overall.n == 4 == sum(b.n for b in report.buckets.values())

    def test_merge_consistency(self):
        a = [self._record(1.0, 1), self._record(0.0, 1)]
        b = [self._record(1.0, 1), self._record(1.0, 2)]
        merged = stratify(a + b)
        n_weighted = (
            stratify(a).buckets[1].mean * 2 + stratify(b).buckets[1].mean * 1
        ) / 3
        assert math.isclose(merged.buckets[1].mean, n_weighted)


# --- properties ---------------------------------------------------------------

_token = st.text(alphabet="abcdefgxyz04", min_size=1, max_size=6)
_answer_sets = st.lists(_token, min_size=0, max_size=6).map(lambda xs: AnswerSet.of(*xs))
_texts = st.text(alphabet=st.characters(codec="utf-8", exclude_categories=("Cs",)), max_size=80)


@settings(max_examples=1000, deadline=None)
@given(_answer_sets, _answer_sets)
def test_set_f1_symmetric_and_bounded(a, b):
    assert set_f1(a, b) == set_f1(b, a)
    assert 0.0 <= set_f1(a, b) <= 1.0


@settings(max_examples=1000, deadline=None)
@given(_texts, _texts)
def test_token_f1_symmetric_and_bounded(a, b):
    assert math.isclose(token_f1(a, b), token_f1(b, a), abs_tol=1e-12)
    assert 0.0 <= token_f1(a, b) <= 1.0


@settings(max_examples=1000, deadline=None)
@given(_texts, _token)
def test_last_tag_extraction_property(prefix, payload):
    text = prefix + f"<answer>{payload}</answer>"
    if "<answer>" not in prefix and "</answer>" not in prefix:
        assert extract_answer(text) == payload.strip()


@settings(max_examples=300, deadline=None)
@given(st.lists(_token, min_size=1, max_size=5))
def test_set_f1_permutation_and_duplication_invariant(elements):
    gold = AnswerSet.of(*elements)
    joined = ",".join(elements)
    doubled = ",".join(elements + list(reversed(elements)))
    assert set_f1(parse_answer_set(joined), gold) == set_f1(parse_answer_set(doubled), gold)


@settings(max_examples=300, deadline=None)
@given(_answer_sets)
def test_set_f1_one_iff_equal(a):
    assert set_f1(a, a) == 1.0


def test_summarize_empty_and_single():
    assert summarize([]).n == 0
    single = summarize([0.7])
    assert single.mean == 0.7 and single.standard_error == 0.0
