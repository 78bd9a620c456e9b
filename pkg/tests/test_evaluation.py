import warnings as warnings_module

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schemavec.ddl import TableSchema
from schemavec.evaluation import (
    FuzzyScore,
    SplitConfig,
    evaluate,
    fuzzy_f1,
    split_dataset,
    summarize,
)
from schemavec.namegen import NameIndex, build_name_index
from schemavec.wordnet import path_similarity
from schemavec.wordsplit import split_name

from test_namegen import stub_model


# ---------------------------------------------------------------- fuzzy F1

def test_identical_names_score_one(lexicon, wordnet_graph):
    assert fuzzy_f1("users", "users", lexicon, wordnet_graph).f1 == 1.0
    assert fuzzy_f1("holiday_dates", "holidaydates", lexicon, wordnet_graph).f1 == 1.0


def test_pluralization_scores_one(lexicon, wordnet_graph):
    score = fuzzy_f1("position", "positions", lexicon, wordnet_graph)
    assert (score.precision, score.recall, score.f1) == (1.0, 1.0, 1.0)


def test_punctuation_and_pluralization_scores_one(lexicon, wordnet_graph):
    score = fuzzy_f1("recipe_ingredients", "recipeingredient", lexicon, wordnet_graph)
    assert score.f1 == 1.0


def test_worked_example_against_direct_formula(lexicon, wordnet_graph):
    """Cross-check fuzzy_f1 against the per-word best-match formula computed
    directly from path_similarity, then pin the honest WordNet 3.0 values."""
    original = split_name("holidaydates", lexicon).words
    predicted = split_name("eventdates", lexicon).words
    assert original == ("holiday", "dates")
    assert predicted == ("event", "dates")

    precision = sum(
        max(path_similarity(q, o, wordnet_graph) for o in original) for q in predicted
    ) / len(predicted)
    recall = sum(
        max(path_similarity(o, q, wordnet_graph) for q in predicted) for o in original
    ) / len(original)
    score = fuzzy_f1("holidaydates", "eventdates", lexicon, wordnet_graph)
    assert score.precision == pytest.approx(precision)
    assert score.recall == pytest.approx(recall)

    # frozen regression values on the vendored WordNet 3.0 database:
    # sim(holiday,event)=1/9, sim(event,dates)=1/6, sim(holiday,dates)=1/4
    assert score.precision == pytest.approx((1 / 6 + 1.0) / 2)
    assert score.recall == pytest.approx((1 / 4 + 1.0) / 2)
    assert score.f1 == pytest.approx(0.603448, abs=1e-6)


def test_empty_after_split_scores_zero(lexicon, wordnet_graph):
    with pytest.warns(UserWarning):
        score = fuzzy_f1("123", "users", lexicon, wordnet_graph)
    assert score == FuzzyScore(0.0, 0.0, 0.0)
    with pytest.warns(UserWarning):
        assert fuzzy_f1("users", "___", lexicon, wordnet_graph).f1 == 0.0


def test_same_word_multiset_gives_perfect_precision_recall(lexicon, wordnet_graph):
    score = fuzzy_f1("user_events", "eventsuser", lexicon, wordnet_graph)
    assert score.precision == 1.0 and score.recall == 1.0 and score.f1 == 1.0


def test_replacing_word_with_higher_similarity_never_lowers_precision(lexicon, mini_graph):
    # original [dog]; predicted word upgraded cat -> dog (similarity 1/3 -> 1)
    weaker = fuzzy_f1("dog", "cat", lexicon, mini_graph)
    stronger = fuzzy_f1("dog", "dog", lexicon, mini_graph)
    assert stronger.precision >= weaker.precision
    # and an intermediate hop: chess (cross-root) < cat < dog
    weakest = fuzzy_f1("dog", "chess", lexicon, mini_graph)
    assert weakest.precision <= weaker.precision


def test_f1_identity():
    score = FuzzyScore.from_pr(0.5, 0.25)
    assert score.f1 == pytest.approx(2 * 0.5 * 0.25 / 0.75)
    assert FuzzyScore.from_pr(0.0, 0.0).f1 == 0.0


@settings(max_examples=80, deadline=None)
@given(
    original=st.lists(st.sampled_from(["dog", "cat", "hammer", "chess", "oak", "gold"]),
                      min_size=1, max_size=4),
    predicted=st.lists(st.sampled_from(["dog", "wolf", "saw", "game", "rose", "iron"]),
                       min_size=1, max_size=4),
)
def test_f1_algebraic_bound(lexicon, mini_graph, original, predicted):
    score = fuzzy_f1("".join(original), "".join(predicted), lexicon, mini_graph)
    assert 0.0 <= score.f1 <= min(1.0, 2.0 * max(score.precision, score.recall)) + 1e-12


@settings(max_examples=120, deadline=None)
@given(st.text(min_size=1, max_size=20))
def test_fuzzy_f1_never_raises(lexicon, mini_graph, original):
    with warnings_module.catch_warnings():
        warnings_module.simplefilter("ignore")
        score = fuzzy_f1(original, "users", lexicon, mini_graph)
    assert 0.0 <= score.f1 <= 1.0


# ---------------------------------------------------------------- dataset split

def make_schemas(n):
    return [TableSchema(f"t{i}", (f"c{i}", "id")) for i in range(n)]


def test_split_900_100():
    train_set, test_set = split_dataset(make_schemas(1000), SplitConfig(0.9, seed=5))
    assert len(train_set) == 900 and len(test_set) == 100


def test_split_deterministic():
    corpus = make_schemas(50)
    first = split_dataset(corpus, SplitConfig(0.8, seed=123))
    second = split_dataset(corpus, SplitConfig(0.8, seed=123))
    assert first == second
    different = split_dataset(corpus, SplitConfig(0.8, seed=124))
    assert different != first


def test_split_two_schemas_half():
    train_set, test_set = split_dataset(make_schemas(2), SplitConfig(0.5, seed=1))
    assert len(train_set) == 1 and len(test_set) == 1


def test_split_is_exact_partition():
    corpus = make_schemas(37)
    train_set, test_set = split_dataset(corpus, SplitConfig(0.7, seed=9))
    assert len(train_set) + len(test_set) == len(corpus)
    assert sorted(s.table_name for s in train_set + test_set) == sorted(
        s.table_name for s in corpus
    )
    assert not {s.table_name for s in train_set} & {s.table_name for s in test_set}


def test_split_too_small():
    with pytest.raises(ValueError):
        split_dataset(make_schemas(1), SplitConfig(0.9, seed=1))


def test_split_fraction_validation():
    with pytest.raises(ValueError):
        SplitConfig(train_fraction=0.0)
    with pytest.raises(ValueError):
        SplitConfig(train_fraction=1.0)


# ---------------------------------------------------------------- evaluate

def one_hot_model_and_index(names):
    dim = len(names)
    rows = {name: [1.0 if i == j else 0.0 for j in range(dim)] for i, name in enumerate(names)}
    model = stub_model(rows)
    index = build_name_index(model, list(names))
    return model, index


def test_perfect_predictions(lexicon, wordnet_graph):
    names = ["users", "orders", "events"]
    model, index = one_hot_model_and_index(names)
    test = [TableSchema(name, (name,)) for name in names]
    records, summary = evaluate(model, index, test, lexicon, wordnet_graph)
    assert [r.predicted for r in records] == names
    assert all(r.score.f1 == 1.0 for r in records)
    assert summary.one_fraction == 1.0
    assert all(fraction == 0.0 for x, fraction in summary.cdf if x < 1.0)


def test_single_record_degenerate_distribution(lexicon, wordnet_graph):
    model, index = one_hot_model_and_index(["users", "orders"])
    records, summary = evaluate(model, index, [TableSchema("users", ("users",))], lexicon, wordnet_graph)
    value = records[0].score.f1
    assert summary.count == 1
    assert all(d == value for d in summary.deciles)


def test_prediction_errors_scored_zero(lexicon, wordnet_graph):
    model, index = one_hot_model_and_index(["users", "orders"])
    bad_index = NameIndex(["users"], np.ones((1, 7), dtype=np.float32))  # dim mismatch
    test = [TableSchema("users", ("users",))]
    records, summary = evaluate(model, bad_index, test, lexicon, wordnet_graph)
    assert records[0].score.f1 == 0.0
    assert records[0].note != ""
    assert summary.count == 1


def test_record_order_preserved(lexicon, wordnet_graph):
    names = ["users", "orders", "events", "tags"]
    model, index = one_hot_model_and_index(names)
    test = [TableSchema(n, (n,)) for n in reversed(names)]
    records, _ = evaluate(model, index, test, lexicon, wordnet_graph)
    assert [r.original for r in records] == list(reversed(names))


def test_evaluate_empty_test_set(lexicon, wordnet_graph):
    model, index = one_hot_model_and_index(["users"])
    with pytest.raises(ValueError):
        evaluate(model, index, [], lexicon, wordnet_graph)


# ---------------------------------------------------------------- summary

def test_summary_statistics():
    records = [
        type("R", (), {"score": FuzzyScore(0, 0, f1)})()
        for f1 in (0.0, 0.0, 0.5, 1.0)
    ]
    summary = summarize(records)
    assert summary.count == 4
    assert summary.zero_fraction == 0.5
    assert summary.one_fraction == 0.25
    assert summary.deciles[0] == 0.0 and summary.deciles[-1] == 1.0
    assert len(summary.cdf) == 101
    assert summary.cdf[0] == (0.0, 0.5)
    assert summary.cdf[-1] == (1.0, 1.0)
    fractions = [fraction for _, fraction in summary.cdf]
    assert fractions == sorted(fractions)
    text = summary.format_text()
    assert "records" in text and "deciles" in text


def test_median_regression_on_bundled_pipeline(desk_model, bundled_clean, lexicon, wordnet_graph):
    train_set, test_set = split_dataset(bundled_clean, SplitConfig(0.9, seed=43))
    index = build_name_index(desk_model, [s.table_name for s in train_set])
    first_records, first_summary = evaluate(desk_model, index, test_set, lexicon, wordnet_graph)
    second_records, second_summary = evaluate(desk_model, index, test_set, lexicon, wordnet_graph)
    assert [r.score for r in first_records] == [r.score for r in second_records]
    assert first_summary.deciles == second_summary.deciles
    # frozen after first measurement: median F1 of the desk-scale run
    assert first_summary.deciles[5] == pytest.approx(0.111111, abs=1e-6)
