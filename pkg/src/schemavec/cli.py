"""Command line front-end for the schema naming pipeline.

Subcommands cover each pipeline stage (extract, clean, train, suggest,
split, wnsim, eval) plus a `pipeline` command that chains the whole
experiment from one config file.

Exit codes: 0 success, 1 usage error, 2 data or IO error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from schemavec import __version__
from schemavec.cleaning import CleanConfig, clean_corpus
from schemavec.ddl import extract_schemas, read_corpus_file, read_document_file, write_corpus_file
from schemavec.embedding import TrainConfig, load_model, save_model, train
from schemavec.evaluation import SplitConfig, evaluate, split_dataset
from schemavec.fileio import (
    DataError,
    atomic_write,
    bundled_corpus_path,
    bundled_lexicon_path,
    bundled_wordnet_dir,
)
from schemavec.namegen import build_name_index, compose_table_vector, load_index, save_index, suggest
from schemavec.wordnet import load_wordnet, path_similarity
from schemavec.wordsplit import load_lexicon, split_name

WORDNET_ENV_VAR = "C2V_WORDNET_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exceptions instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def _default_wordnet_dir() -> str:
    return os.environ.get(WORDNET_ENV_VAR) or str(bundled_wordnet_dir())


def build_parser() -> _Parser:
    parser = _Parser(prog="schemavec", description=__doc__)
    parser.add_argument("--version", action="version", version=f"schemavec {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="command")

    p = commands.add_parser("extract", help="extract table/column names from SQL files")
    p.add_argument("paths", nargs="*", help="SQL files; stdin when omitted")
    p.add_argument("--out", help="corpus file to write (stdout when omitted)")

    p = commands.add_parser("clean", help="filter test/dummy schemas from a corpus file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", help="filtered corpus file (stdout when omitted)")
    p.add_argument("--rare-trigram-fraction", type=float, default=0.5)
    p.add_argument("--digit-fraction", type=float, default=0.3)
    p.add_argument("--reject-log", help="write one 'name<TAB>rule' line per rejection")

    p = commands.add_parser("train", help="train embeddings on a corpus file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True, help="model file to write")
    p.add_argument("--index", help="also write a name index over the corpus table names")
    p.add_argument("--dim", type=int, default=100)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--window-full", action="store_true", help="window always spans the whole document")
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--learning-rate", type=float, default=0.05)
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--ngram-min", type=int, default=3)
    p.add_argument("--ngram-max", type=int, default=6)
    p.add_argument("--bucket", type=int, default=2_000_000)
    p.add_argument("--min-count", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--threads", type=int, default=1)

    p = commands.add_parser("suggest", help="suggest table names for a column list")
    p.add_argument("--model", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--columns", required=True, help="comma-separated column names")
    p.add_argument("--k", type=int, default=1)

    p = commands.add_parser("split", help="split identifiers into words")
    p.add_argument("names", nargs="+")
    p.add_argument("--lexicon", default=str(bundled_lexicon_path()))

    p = commands.add_parser("wnsim", help="WordNet path similarity between two words")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--wordnet-dir", default=None)

    p = commands.add_parser("eval", help="score predictions for a test corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--test", required=True, help="test corpus file")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--out", default=".", help="directory for results.tsv, cdf.tsv, cdf.png")
    p.add_argument("--lexicon", default=str(bundled_lexicon_path()))
    p.add_argument("--wordnet-dir", default=None)

    p = commands.add_parser("pipeline", help="extract, clean, split, train, index and eval in one run")
    p.add_argument("--config", required=True, help="key = value config file")
    p.add_argument("--out", help="override the configured output directory")
    p.add_argument("--seed", type=int, help="override the configured seed")

    return parser


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
    except UsageError as exc:
        print(parser.format_usage(), file=sys.stderr, end="")
        print(f"schemavec: error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"schemavec: error: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError, ValueError) as exc:
        print(f"schemavec: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_command(sys.argv[1:]))


def _cmd_extract(args) -> int:
    schemas = []
    warnings = []
    if args.paths:
        for path in args.paths:
            text = Path(path).read_text(encoding="utf-8", errors="replace")
            file_schemas, file_warnings = extract_schemas(text, path)
            schemas.extend(file_schemas)
            warnings.extend(file_warnings)
    else:
        file_schemas, file_warnings = extract_schemas(sys.stdin.read(), "<stdin>")
        schemas.extend(file_schemas)
        warnings.extend(file_warnings)
    for warning in warnings:
        print(f"warning: {warning.source}@{warning.offset}: {warning.message}", file=sys.stderr)
    if args.out:
        write_corpus_file(args.out, schemas)
        print(f"extracted {len(schemas)} schema(s) -> {args.out}", file=sys.stderr)
    else:
        for schema in schemas:
            print(" ".join([schema.table_name, *schema.columns]))
    return 0


def _cmd_clean(args) -> int:
    corpus = read_corpus_file(args.corpus)
    config = CleanConfig(
        rare_trigram_fraction=args.rare_trigram_fraction,
        digit_fraction=args.digit_fraction,
    )
    kept, report = clean_corpus(corpus, config)
    if args.out:
        write_corpus_file(args.out, kept)
    else:
        for schema in kept:
            print(" ".join([schema.table_name, *schema.columns]))
    if args.reject_log:
        with atomic_write(args.reject_log) as handle:
            report.write_log(handle)
    print(f"kept {len(kept)} of {len(corpus)} schema(s)", file=sys.stderr)
    print(report.summary(), file=sys.stderr)
    return 0


def _train_config_from_args(args, seed=None) -> TrainConfig:
    return TrainConfig(
        dim=args.dim,
        window=args.window,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        negatives=args.negatives,
        ngram_min=args.ngram_min,
        ngram_max=args.ngram_max,
        bucket=args.bucket,
        min_count=args.min_count,
        seed=args.seed if seed is None else seed,
        window_full=args.window_full,
        threads=args.threads,
    )


def _cmd_train(args) -> int:
    documents = read_document_file(args.corpus)
    model = train(documents, _train_config_from_args(args))
    save_model(model, args.model)
    print(
        f"trained on {len(documents)} document(s), vocabulary {len(model.vocabulary)} -> {args.model}",
        file=sys.stderr,
    )
    if args.index:
        names = [doc[0] for doc in documents if doc]
        save_index(build_name_index(model, names), args.index)
        print(f"indexed {len(set(names))} unique name(s) -> {args.index}", file=sys.stderr)
    return 0


def _cmd_suggest(args) -> int:
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    if not columns:
        raise UsageError("--columns must name at least one column")
    model = load_model(args.model)
    index = load_index(args.index)
    query = compose_table_vector(model, columns)
    for suggestion in suggest(index, query, k=args.k):
        print(f"{suggestion.name}\t{suggestion.score:.6f}")
    return 0


def _cmd_split(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    for name in args.names:
        print(" ".join(split_name(name, lexicon).words))
    return 0


def _cmd_wnsim(args) -> int:
    graph = load_wordnet(args.wordnet_dir or _default_wordnet_dir())
    similarity = path_similarity(args.word1.lower(), args.word2.lower(), graph)
    print(f"{similarity:.6f}")
    return 0


def _cmd_eval(args) -> int:
    model = load_model(args.model)
    index = load_index(args.index)
    test = read_corpus_file(args.test)
    lexicon = load_lexicon(args.lexicon)
    graph = load_wordnet(args.wordnet_dir or _default_wordnet_dir())
    records, summary = evaluate(model, index, test, lexicon, graph, k=args.k)
    # imported here so commands that never plot skip the matplotlib import
    from schemavec.report import write_report

    paths = write_report(args.out, records, summary)
    print(summary.format_text())
    print("wrote " + ", ".join(str(p) for p in paths.values()))
    return 0


_PIPELINE_DEFAULTS = {
    "sql": None,  # falls back to the bundled corpus
    "out_dir": "pipeline-out",
    "dim": 100,
    "window": 5,
    "window_full": False,
    "epochs": 5,
    "learning_rate": 0.05,
    "negatives": 5,
    "ngram_min": 3,
    "ngram_max": 6,
    "bucket": 2_000_000,
    "min_count": 1,
    "seed": 1,
    "threads": 1,
    "train_fraction": 0.9,
    "rare_trigram_fraction": 0.5,
    "digit_fraction": 0.3,
    "k": 1,
    "lexicon": None,
    "wordnet_dir": None,
}

_BOOL_KEYS = {"window_full"}
_INT_KEYS = {"dim", "window", "epochs", "negatives", "ngram_min", "ngram_max",
             "bucket", "min_count", "seed", "threads", "k"}
_FLOAT_KEYS = {"learning_rate", "train_fraction", "rare_trigram_fraction", "digit_fraction"}


def read_pipeline_config(path) -> dict:
    """Parse 'key = value' lines; '#' starts a comment, blank lines ignored."""
    settings = dict(_PIPELINE_DEFAULTS)
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DataError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in settings:
                raise DataError(f"{path}:{lineno}: unknown config key {key!r}")
            try:
                if key in _INT_KEYS:
                    settings[key] = int(value)
                elif key in _FLOAT_KEYS:
                    settings[key] = float(value)
                elif key in _BOOL_KEYS:
                    if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                        raise ValueError(value)
                    settings[key] = value.lower() in ("true", "1", "yes")
                else:
                    settings[key] = value
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad value {value!r} for key {key!r}")
    return settings


def _cmd_pipeline(args) -> int:
    settings = read_pipeline_config(args.config)
    if args.out:
        settings["out_dir"] = args.out
    if args.seed is not None:
        settings["seed"] = args.seed
    out_dir = Path(settings["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)

    sql_path = settings["sql"] or str(bundled_corpus_path())
    text = Path(sql_path).read_text(encoding="utf-8", errors="replace")
    schemas, parse_warnings = extract_schemas(text, sql_path)
    for warning in parse_warnings:
        print(f"warning: {warning.source}@{warning.offset}: {warning.message}", file=sys.stderr)
    write_corpus_file(out_dir / "corpus.txt", schemas)

    clean_config = CleanConfig(
        rare_trigram_fraction=settings["rare_trigram_fraction"],
        digit_fraction=settings["digit_fraction"],
    )
    kept, report = clean_corpus(schemas, clean_config)
    write_corpus_file(out_dir / "cleaned.txt", kept)
    with atomic_write(out_dir / "rejections.tsv") as handle:
        report.write_log(handle)

    # sub-seeds are fixed offsets from the one top-level seed
    split_config = SplitConfig(train_fraction=settings["train_fraction"], seed=settings["seed"] + 1)
    train_set, test_set = split_dataset(kept, split_config)
    write_corpus_file(out_dir / "train.txt", train_set)
    write_corpus_file(out_dir / "test.txt", test_set)

    train_config = TrainConfig(
        dim=settings["dim"],
        window=settings["window"],
        epochs=settings["epochs"],
        learning_rate=settings["learning_rate"],
        negatives=settings["negatives"],
        ngram_min=settings["ngram_min"],
        ngram_max=settings["ngram_max"],
        bucket=settings["bucket"],
        min_count=settings["min_count"],
        seed=settings["seed"],
        window_full=settings["window_full"],
        threads=settings["threads"],
    )
    documents = [[s.table_name, *s.columns] for s in train_set]
    model = train(documents, train_config)
    save_model(model, out_dir / "model.c2v")

    index = build_name_index(model, [s.table_name for s in train_set])
    save_index(index, out_dir / "model.c2i")

    lexicon = load_lexicon(settings["lexicon"] or bundled_lexicon_path())
    graph = load_wordnet(settings["wordnet_dir"] or _default_wordnet_dir())
    records, summary = evaluate(model, index, test_set, lexicon, graph, k=settings["k"])
    from schemavec.report import write_report

    write_report(out_dir, records, summary)

    print(f"extracted {len(schemas)}, kept {len(kept)}, train {len(train_set)}, test {len(test_set)}")
    print(summary.format_text())
    print(f"outputs in {out_dir}")
    return 0


_COMMANDS = {
    "extract": _cmd_extract,
    "clean": _cmd_clean,
    "train": _cmd_train,
    "suggest": _cmd_suggest,
    "split": _cmd_split,
    "wnsim": _cmd_wnsim,
    "eval": _cmd_eval,
    "pipeline": _cmd_pipeline,
}

if __name__ == "__main__":
    main()
