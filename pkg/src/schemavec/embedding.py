"""Subword skip-gram embeddings with negative sampling.

Tokens are represented as the mean of a whole-word row and hashed character
n-gram rows, so vectors exist for tokens never seen in training. Training
is plain SGD over (target, context) pairs with negatives drawn from the
unigram distribution raised to 3/4. Single-threaded runs are bit-for-bit
reproducible for a fixed seed; the optional multi-worker mode trades that
determinism for speed by letting workers race on the shared matrices.
"""

from __future__ import annotations

import json
import math
import threading
from collections import Counter
from dataclasses import dataclass, asdict, field

import numpy as np

from schemavec.fileio import DataError, atomic_write

MODEL_MAGIC = b"C2V1"

_FNV_OFFSET_BASIS = 2166136261
_FNV_PRIME = 16777619

# Training-side guard: learning rate never decays below this fraction of the
# initial rate, so late documents still move the parameters.
_MIN_LR_FRACTION = 1e-4


def fnv1a_32(data: bytes) -> int:
    value = _FNV_OFFSET_BASIS
    for byte in data:
        value ^= byte
        value = (value * _FNV_PRIME) & 0xFFFFFFFF
    return value


def ngram_bucket(ngram: str, bucket: int) -> int:
    """Deterministic bucket index for an n-gram, identical on every platform."""
    return fnv1a_32(ngram.encode("utf-8")) % bucket


def subword_ngrams(token: str, ngram_min: int, ngram_max: int) -> list[str]:
    """Character n-grams of the boundary-marked token, ordered by (start, length)."""
    wrapped = f"<{token}>"
    grams = []
    for start in range(len(wrapped)):
        for length in range(ngram_min, ngram_max + 1):
            if start + length > len(wrapped):
                break
            grams.append(wrapped[start:start + length])
    return grams


@dataclass(frozen=True)
class TrainConfig:
    dim: int = 100
    window: int = 5
    epochs: int = 5
    learning_rate: float = 0.05
    negatives: int = 5
    ngram_min: int = 3
    ngram_max: int = 6
    bucket: int = 2_000_000
    min_count: int = 1
    seed: int = 1
    window_full: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.dim < 1 or self.bucket < 1 or self.window < 1:
            raise ValueError("dim, bucket and window must be positive")
        if self.ngram_min > self.ngram_max:
            raise ValueError("ngram_min must not exceed ngram_max")


class Vocabulary:
    """Dense token ids assigned by descending frequency, ties lexicographic."""

    def __init__(self, frequencies: dict[str, int], min_count: int):
        self.min_count = min_count
        self.id_to_token = sorted(
            (t for t, f in frequencies.items() if f >= min_count),
            key=lambda t: (-frequencies[t], t),
        )
        self.token_to_id = {t: i for i, t in enumerate(self.id_to_token)}
        self.frequencies = {t: frequencies[t] for t in self.id_to_token}

    def __len__(self) -> int:
        return len(self.id_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_id

    def id_of(self, token: str) -> int | None:
        return self.token_to_id.get(token)


def build_vocabulary(documents: list[list[str]], min_count: int = 1) -> Vocabulary:
    frequencies: Counter = Counter()
    for document in documents:
        frequencies.update(document)
    vocabulary = Vocabulary(frequencies, min_count)
    if len(vocabulary) == 0:
        raise DataError("no trainable tokens: vocabulary is empty after min_count filtering")
    return vocabulary


@dataclass
class EmbeddingModel:
    vocabulary: Vocabulary
    config: TrainConfig
    input_matrix: np.ndarray   # (V + bucket, dim); rows >= V are n-gram buckets
    output_matrix: np.ndarray  # (V, dim) context vectors
    epoch_losses: list[float] = field(default_factory=list)
    _row_cache: dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.config.dim

    def input_rows(self, token: str) -> np.ndarray:
        """Matrix rows representing a token: whole-word row plus n-gram buckets."""
        cached = self._row_cache.get(token)
        if cached is not None:
            return cached
        if not token:
            raise ValueError("empty token has no representation")
        vocab_size = len(self.vocabulary)
        rows = []
        word_id = self.vocabulary.id_of(token)
        if word_id is not None:
            rows.append(word_id)
        rows.extend(
            vocab_size + ngram_bucket(gram, self.config.bucket)
            for gram in subword_ngrams(token, self.config.ngram_min, self.config.ngram_max)
        )
        if not rows:
            raise ValueError(
                f"token {token!r} is out of vocabulary and yields no n-grams"
                f" for lengths {self.config.ngram_min}..{self.config.ngram_max}"
            )
        result = np.asarray(rows, dtype=np.int64)
        self._row_cache[token] = result
        return result


def vector(model: EmbeddingModel, token: str) -> np.ndarray:
    """Embedding of any non-empty token, in or out of vocabulary."""
    rows = model.input_rows(token)
    return model.input_matrix[rows].mean(axis=0)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    norm_u = np.linalg.norm(u)
    norm_v = np.linalg.norm(v)
    if norm_u == 0.0 or norm_v == 0.0:
        raise ValueError("undefined cosine: zero vector")
    return float(np.dot(u, v) / (norm_u * norm_v))


def _pair_forward_backward(input_matrix, output_matrix, input_rows, out_ids, labels):
    """Loss and gradients for one (target, context, negatives) training example.

    Returns (loss, input_row_gradient, output_gradients). The input gradient
    applies to every row in input_rows (each contributes 1/n of the mean);
    output_gradients aligns with out_ids. Dtype follows the matrices, so the
    same code serves float32 training and float64 gradient checks.
    """
    row_count = len(input_rows)
    hidden = input_matrix[input_rows].sum(axis=0)
    hidden *= 1.0 / row_count
    out_vectors = output_matrix[out_ids]
    scores = out_vectors @ hidden
    # log(sigmoid(x)) = -softplus(-x), computed without overflow
    signed = np.where(labels == 1.0, scores, -scores)
    loss = float(np.logaddexp(0.0, -signed).sum())
    residual = _sigmoid(scores) - labels
    input_gradient = (residual @ out_vectors) / row_count
    output_gradients = residual[:, None] * hidden[None, :]
    return loss, input_gradient, output_gradients


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def negative_sampling_loss(input_matrix, output_matrix, input_rows, context_id, negative_ids) -> float:
    out_ids, labels = _example_ids(input_matrix, context_id, negative_ids)
    loss, _, _ = _pair_forward_backward(input_matrix, output_matrix, input_rows, out_ids, labels)
    return loss


def negative_sampling_gradients(input_matrix, output_matrix, input_rows, context_id, negative_ids):
    """Analytic gradients as ({input_row: grad}, {output_row: grad}) dicts."""
    out_ids, labels = _example_ids(input_matrix, context_id, negative_ids)
    _, input_gradient, output_gradients = _pair_forward_backward(
        input_matrix, output_matrix, input_rows, out_ids, labels
    )
    input_grads: dict[int, np.ndarray] = {}
    for row in np.asarray(input_rows).tolist():
        if row in input_grads:
            input_grads[row] = input_grads[row] + input_gradient
        else:
            input_grads[row] = input_gradient.copy()
    output_grads: dict[int, np.ndarray] = {}
    for position, row in enumerate(np.asarray(out_ids).tolist()):
        if row in output_grads:
            output_grads[row] = output_grads[row] + output_gradients[position]
        else:
            output_grads[row] = output_gradients[position].copy()
    return input_grads, output_grads


def _example_ids(input_matrix, context_id, negative_ids):
    out_ids = np.concatenate(([context_id], np.asarray(negative_ids, dtype=np.int64)))
    labels = np.zeros(len(out_ids), dtype=input_matrix.dtype)
    labels[0] = 1.0
    return out_ids.astype(np.int64), labels


def _build_sampling_table(vocabulary: Vocabulary, rng: np.random.Generator) -> np.ndarray:
    """Unigram^0.75 sampling array; index into it uniformly to draw negatives."""
    vocab_size = len(vocabulary)
    table_size = 10_000_000 if vocab_size >= 1000 else 10_000 * vocab_size
    weights = np.array(
        [vocabulary.frequencies[t] for t in vocabulary.id_to_token], dtype=np.float64
    ) ** 0.75
    cumulative = np.cumsum(weights / weights.sum())
    positions = (np.arange(table_size) + 0.5) / table_size
    return np.searchsorted(cumulative, positions).astype(np.int32)


def train(documents: list[list[str]], config: TrainConfig | None = None) -> EmbeddingModel:
    """Train skip-gram embeddings over the documents.

    With threads == 1 the result is a deterministic function of (documents,
    config); with more threads, workers update the shared matrices without
    locks and small races are expected.
    """
    config = config or TrainConfig()
    vocabulary = build_vocabulary(documents, config.min_count)
    vocab_size = len(vocabulary)

    rng = np.random.Generator(np.random.PCG64(config.seed))
    input_matrix = (
        (rng.random((vocab_size + config.bucket, config.dim), dtype=np.float32) - 0.5)
        / config.dim
    )
    output_matrix = np.zeros((vocab_size, config.dim), dtype=np.float32)

    model = EmbeddingModel(vocabulary, config, input_matrix, output_matrix)
    documents_ids = [
        ids for ids in (
            [vocabulary.id_of(t) for t in doc if t in vocabulary] for doc in documents
        )
        if len(ids) >= 2
    ]
    token_rows = [model.input_rows(token) for token in vocabulary.id_to_token]
    table = _build_sampling_table(vocabulary, rng)

    if config.threads <= 1:
        _train_worker(model, documents_ids, token_rows, table, rng, config)
    else:
        shards = [documents_ids[i::config.threads] for i in range(config.threads)]
        workers = [
            threading.Thread(
                target=_train_worker,
                args=(
                    model,
                    shard,
                    token_rows,
                    table,
                    np.random.Generator(np.random.PCG64(config.seed + 1 + index)),
                    config,
                ),
            )
            for index, shard in enumerate(shards)
        ]
        for worker in workers:
            worker.start()
        for worker in workers:
            worker.join()

    for epoch, loss in enumerate(model.epoch_losses):
        if not math.isfinite(loss):
            raise DataError(
                f"training diverged: non-finite loss {loss} in epoch {epoch}"
                f" (learning_rate={config.learning_rate}, dim={config.dim})"
            )
    return model


def _train_worker(model, documents_ids, token_rows, table, rng, config):
    input_matrix, output_matrix = model.input_matrix, model.output_matrix
    total_tokens = max(1, config.epochs * sum(len(d) for d in documents_ids))
    table_size = len(table)
    processed = 0
    for _ in range(config.epochs):
        epoch_loss = 0.0
        epoch_pairs = 0
        for doc in documents_ids:
            doc_len = len(doc)
            for position, target in enumerate(doc):
                lr = config.learning_rate * max(
                    1.0 - processed / total_tokens, _MIN_LR_FRACTION
                )
                processed += 1
                if config.window_full:
                    reach = doc_len
                else:
                    reach = int(rng.integers(1, config.window + 1))
                lo = max(0, position - reach)
                hi = min(doc_len, position + reach + 1)
                contexts = [doc[p] for p in range(lo, hi) if p != position]
                if not contexts:
                    continue
                target_rows = token_rows[target]
                draws = table[rng.integers(0, table_size, size=(len(contexts), config.negatives))]
                for context, drawn in zip(contexts, draws):
                    negatives = drawn[drawn != context]
                    out_ids = np.empty(1 + len(negatives), dtype=np.int64)
                    out_ids[0] = context
                    out_ids[1:] = negatives
                    labels = np.zeros(len(out_ids), dtype=np.float32)
                    labels[0] = 1.0
                    loss, input_gradient, output_gradients = _pair_forward_backward(
                        input_matrix, output_matrix, target_rows, out_ids, labels
                    )
                    np.add.at(output_matrix, out_ids, -lr * output_gradients)
                    np.add.at(input_matrix, target_rows, -lr * input_gradient)
                    epoch_loss += loss
                    epoch_pairs += 1
        model.epoch_losses.append(epoch_loss / max(1, epoch_pairs))


def save_model(model: EmbeddingModel, path):
    header = {
        "dim": model.config.dim,
        "bucket": model.config.bucket,
        "ngram_min": model.config.ngram_min,
        "ngram_max": model.config.ngram_max,
        "vocab_size": len(model.vocabulary),
        "tokens": model.vocabulary.id_to_token,
        "frequencies": [model.vocabulary.frequencies[t] for t in model.vocabulary.id_to_token],
        "config": asdict(model.config),
        "epoch_losses": model.epoch_losses,
    }
    with atomic_write(path, "wb") as handle:
        handle.write(MODEL_MAGIC)
        handle.write((json.dumps(header) + "\n").encode("utf-8"))
        handle.write(np.ascontiguousarray(model.input_matrix, dtype="<f4").tobytes())
        handle.write(np.ascontiguousarray(model.output_matrix, dtype="<f4").tobytes())


def load_model(path) -> EmbeddingModel:
    with open(path, "rb") as handle:
        magic = handle.read(4)
        if magic != MODEL_MAGIC:
            raise DataError(f"{path}: bad magic {magic!r}, expected {MODEL_MAGIC!r}")
        header_line = handle.readline()
        try:
            header = json.loads(header_line.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise DataError(f"{path}: unreadable model header") from exc
        config = TrainConfig(**header["config"])
        vocab_size = header["vocab_size"]
        tokens = header["tokens"]
        if len(tokens) != vocab_size:
            raise DataError(f"{path}: header token list disagrees with vocab_size")
        dim, bucket = header["dim"], header["bucket"]
        input_count = (vocab_size + bucket) * dim
        output_count = vocab_size * dim
        payload = handle.read()
        expected_bytes = 4 * (input_count + output_count)
        if len(payload) != expected_bytes:
            raise DataError(
                f"{path}: matrix payload is {len(payload)} bytes, expected {expected_bytes}"
            )
        flat = np.frombuffer(payload, dtype="<f4")
        input_matrix = flat[:input_count].reshape(vocab_size + bucket, dim).copy()
        output_matrix = flat[input_count:].reshape(vocab_size, dim).copy()
    vocabulary = Vocabulary(dict(zip(tokens, header["frequencies"])), config.min_count)
    if vocabulary.id_to_token != tokens:
        raise DataError(f"{path}: header tokens are not in id order")
    model = EmbeddingModel(vocabulary, config, input_matrix, output_matrix)
    model.epoch_losses = list(header.get("epoch_losses", []))
    return model
