"""Suggest table names: sum column vectors, search known names by cosine.

The index is an exhaustive scan over unit-normalized name vectors. Exact
results matter more than speed here; at schema-corpus scale (at most a few
hundred thousand names) a scan is entirely adequate.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from schemavec.embedding import EmbeddingModel, cosine, vector
from schemavec.fileio import DataError, atomic_write

INDEX_MAGIC = b"C2I1"


@dataclass(frozen=True)
class TableVector:
    values: np.ndarray
    column_count: int


@dataclass(frozen=True)
class Suggestion:
    name: str
    score: float


class NameIndex:
    """Unique table names with unit-normalized vectors, in insertion order."""

    def __init__(self, names: list[str], matrix: np.ndarray):
        if len(names) != matrix.shape[0]:
            raise ValueError("names and matrix rows disagree")
        self.names = names
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return len(self.names)


def compose_table_vector(model: EmbeddingModel, columns: list[str]) -> TableVector:
    """Sum the column vectors; summation order is canonicalized so permuted
    column lists produce bit-identical results."""
    if not columns:
        raise ValueError("no columns to compose")
    total = np.zeros(model.dim, dtype=np.float32)
    for column in sorted(columns):
        if not column:
            raise ValueError("empty column name")
        total += vector(model, column)
    return TableVector(total, len(columns))


def build_name_index(model: EmbeddingModel, names: list[str]) -> NameIndex:
    """Index each unique name by its unit-normalized embedding.

    Names whose embedding is the zero vector cannot be scored and are
    skipped with a warning.
    """
    if not names:
        raise ValueError("no names to index")
    unique = list(dict.fromkeys(names))
    kept: list[str] = []
    rows: list[np.ndarray] = []
    for name in unique:
        v = vector(model, name)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            warnings.warn(f"skipping name with zero vector: {name!r}")
            continue
        kept.append(name)
        rows.append(v / norm)
    if not kept:
        raise DataError("empty index: every name had a zero vector")
    return NameIndex(kept, np.vstack(rows))


def suggest(index: NameIndex, query: TableVector | np.ndarray, k: int = 1) -> list[Suggestion]:
    """The k index entries most similar to the query, best first.

    Sorted by cosine score descending, ties broken by name ascending. Scores
    come from the same cosine routine tests use as their oracle, so results
    are exact, not approximate.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    values = query.values if isinstance(query, TableVector) else query
    if not np.any(values):
        raise ValueError("zero query vector")
    scored = [
        (-cosine(values, row), name)
        for row, name in zip(index.matrix, index.names)
    ]
    scored.sort()
    return [Suggestion(name, -neg_score) for neg_score, name in scored[:k]]


def save_index(index: NameIndex, path):
    header = {"dim": index.dim, "count": len(index), "names": index.names}
    with atomic_write(path, "wb") as handle:
        handle.write(INDEX_MAGIC)
        handle.write((json.dumps(header) + "\n").encode("utf-8"))
        handle.write(np.ascontiguousarray(index.matrix, dtype="<f4").tobytes())


def load_index(path) -> NameIndex:
    with open(path, "rb") as handle:
        magic = handle.read(4)
        if magic != INDEX_MAGIC:
            raise DataError(f"{path}: bad magic {magic!r}, expected {INDEX_MAGIC!r}")
        try:
            header = json.loads(handle.readline().decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise DataError(f"{path}: unreadable index header") from exc
        dim, count, names = header["dim"], header["count"], header["names"]
        if len(names) != count:
            raise DataError(f"{path}: header name list disagrees with count")
        payload = handle.read()
        if len(payload) != 4 * dim * count:
            raise DataError(f"{path}: matrix payload is {len(payload)} bytes, expected {4 * dim * count}")
        matrix = np.frombuffer(payload, dtype="<f4").reshape(count, dim).copy()
    return NameIndex(names, matrix)
