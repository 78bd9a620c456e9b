"""Embeddings for SQL schema identifiers and table name suggestion.

The pipeline: extract table/column names from SQL DDL, filter junk schemas,
train subword skip-gram embeddings on the name documents, then suggest names
for an unlabelled column set by cosine search over known table names.
Includes a WordNet-weighted fuzzy F1 harness for scoring suggestions.
"""

from schemavec.ddl import TableSchema, ParseWarning, extract_schemas, schema_to_document
from schemavec.cleaning import CleanConfig, RejectionReport, clean_corpus
from schemavec.embedding import TrainConfig, EmbeddingModel, train, cosine
from schemavec.namegen import NameIndex, Suggestion, compose_table_vector, build_name_index, suggest
from schemavec.wordsplit import FrequencyLexicon, load_lexicon, split_name
from schemavec.wordnet import WordNetGraph, load_wordnet, path_similarity
from schemavec.evaluation import FuzzyScore, SplitConfig, fuzzy_f1, split_dataset, evaluate

__version__ = "0.1.0"

__all__ = [
    "TableSchema",
    "ParseWarning",
    "extract_schemas",
    "schema_to_document",
    "CleanConfig",
    "RejectionReport",
    "clean_corpus",
    "TrainConfig",
    "EmbeddingModel",
    "train",
    "cosine",
    "NameIndex",
    "Suggestion",
    "compose_table_vector",
    "build_name_index",
    "suggest",
    "FrequencyLexicon",
    "load_lexicon",
    "split_name",
    "WordNetGraph",
    "load_wordnet",
    "path_similarity",
    "FuzzyScore",
    "SplitConfig",
    "fuzzy_f1",
    "split_dataset",
    "evaluate",
]
