"""Corpus split, prediction scoring, and score-distribution summaries.

The fuzzy F1 metric compares the word lists of an original and a predicted
table name. Instead of exact word overlap, each word is credited with its
best WordNet path similarity against the other list, so near-synonyms and
plural variants still score.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass

from schemavec.ddl import TableSchema
from schemavec.namegen import NameIndex, compose_table_vector, suggest
from schemavec.embedding import EmbeddingModel
from schemavec.wordnet import WordNetGraph, path_similarity
from schemavec.wordsplit import FrequencyLexicon, split_name


@dataclass(frozen=True)
class FuzzyScore:
    precision: float
    recall: float
    f1: float

    @staticmethod
    def from_pr(precision: float, recall: float) -> "FuzzyScore":
        denominator = precision + recall
        f1 = 2.0 * precision * recall / denominator if denominator > 0 else 0.0
        return FuzzyScore(precision, recall, f1)


@dataclass(frozen=True)
class EvalRecord:
    original: str
    predicted: str
    score: FuzzyScore
    note: str = ""


@dataclass(frozen=True)
class SplitConfig:
    train_fraction: float = 0.9
    seed: int = 1

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly between 0 and 1")


@dataclass
class DistributionSummary:
    count: int
    zero_fraction: float
    one_fraction: float
    deciles: list[float]          # 0th, 10th, ..., 100th percentile
    cdf: list[tuple[float, float]]  # (x, fraction of scores <= x) at 101 points

    def format_text(self) -> str:
        lines = [
            f"records:        {self.count}",
            f"score == 0:     {self.zero_fraction:.1%}",
            f"score == 1:     {self.one_fraction:.1%}",
            "deciles (0..100):",
            "  " + " ".join(f"{d:.3f}" for d in self.deciles),
        ]
        return "\n".join(lines)


def fuzzy_f1(
    original: str,
    predicted: str,
    lexicon: FrequencyLexicon,
    graph: WordNetGraph,
) -> FuzzyScore:
    """WordNet-weighted precision/recall/F1 between two table names.

    Precision credits each predicted word with its best similarity to any
    original word; recall mirrors this for original words.
    """
    original_words = split_name(original, lexicon).words
    predicted_words = split_name(predicted, lexicon).words
    if not original_words or not predicted_words:
        warnings.warn(
            f"name reduced to no words: {(original if not original_words else predicted)!r}"
        )
        return FuzzyScore(0.0, 0.0, 0.0)
    precision = _mean_best_similarity(predicted_words, original_words, graph)
    recall = _mean_best_similarity(original_words, predicted_words, graph)
    return FuzzyScore.from_pr(precision, recall)


def _mean_best_similarity(words, against, graph) -> float:
    total = 0.0
    for word in words:
        total += max(path_similarity(word, other, graph) for other in against)
    return total / len(words)


def split_dataset(
    corpus: list[TableSchema], config: SplitConfig | None = None
) -> tuple[list[TableSchema], list[TableSchema]]:
    """Deterministic shuffle, then an exact head/tail partition."""
    config = config or SplitConfig()
    if len(corpus) < 2:
        raise ValueError("corpus too small to split: need at least 2 schemas")
    shuffled = list(corpus)
    random.Random(config.seed).shuffle(shuffled)
    # nudge guards decimal fractions like 0.9 that float-round just below
    cut = math.floor(config.train_fraction * len(shuffled) + 1e-9)
    cut = min(max(cut, 1), len(shuffled) - 1)
    return shuffled[:cut], shuffled[cut:]


def evaluate(
    model: EmbeddingModel,
    index: NameIndex,
    test: list[TableSchema],
    lexicon: FrequencyLexicon,
    graph: WordNetGraph,
    k: int = 1,
) -> tuple[list[EvalRecord], DistributionSummary]:
    """Predict a name for every test schema and score it against the truth.

    Prediction failures never abort the run; the record is scored 0 and
    carries an error note.
    """
    if not test:
        raise ValueError("empty test set")
    records = []
    for schema in test:
        try:
            query = compose_table_vector(model, list(schema.columns))
            best = suggest(index, query, k=k)[0]
            score = fuzzy_f1(schema.table_name, best.name, lexicon, graph)
            records.append(EvalRecord(schema.table_name, best.name, score))
        except Exception as exc:  # scored as zero, per-record, never fatal
            records.append(
                EvalRecord(schema.table_name, "", FuzzyScore(0.0, 0.0, 0.0), note=str(exc))
            )
    return records, summarize(records)


def summarize(records: list[EvalRecord]) -> DistributionSummary:
    scores = sorted(r.score.f1 for r in records)
    n = len(scores)
    zero = sum(s == 0.0 for s in scores) / n
    one = sum(s == 1.0 for s in scores) / n
    deciles = [_percentile(scores, p / 100.0) for p in range(0, 101, 10)]
    cdf = []
    for i in range(101):
        x = i / 100.0
        cdf.append((x, _fraction_at_most(scores, x)))
    return DistributionSummary(n, zero, one, deciles, cdf)


def _percentile(sorted_scores: list[float], fraction: float) -> float:
    """Linear interpolation between order statistics, as numpy's default."""
    if len(sorted_scores) == 1:
        return sorted_scores[0]
    position = fraction * (len(sorted_scores) - 1)
    lower = math.floor(position)
    upper = min(lower + 1, len(sorted_scores) - 1)
    weight = position - lower
    return sorted_scores[lower] * (1.0 - weight) + sorted_scores[upper] * weight


def _fraction_at_most(sorted_scores: list[float], x: float) -> float:
    # binary search would be fine too; n stays small enough not to bother
    return sum(s <= x for s in sorted_scores) / len(sorted_scores)
