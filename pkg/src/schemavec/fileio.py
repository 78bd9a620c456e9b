"""Atomic file writes and access to the bundled data files."""

from __future__ import annotations

import gzip
import io
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path


class DataError(Exception):
    """Raised when an input file is missing, malformed, or inconsistent."""


def data_dir() -> Path:
    return Path(__file__).parent / "data"


def bundled_lexicon_path() -> Path:
    return data_dir() / "lexicon" / "wikipedia_words.txt.gz"


def bundled_wordnet_dir() -> Path:
    return data_dir() / "wordnet"


def bundled_corpus_path() -> Path:
    return data_dir() / "corpus" / "synthetic_schemas.sql"


@contextmanager
def atomic_write(path: str | os.PathLike, mode: str = "w", encoding: str | None = None):
    """Write to a temp file in the target directory, rename into place on success.

    The target is never left half-written: on any exception the temp file is
    removed and the original path is untouched.
    """
    path = Path(path)
    if "b" not in mode and encoding is None:
        encoding = "utf-8"
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    # mkstemp files are 0600; match what a plain open() would create
    mask = os.umask(0)
    os.umask(mask)
    os.chmod(tmp_name, 0o666 & ~mask)
    try:
        with os.fdopen(fd, mode, encoding=encoding) as handle:
            yield handle
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def open_maybe_gzip(path: str | os.PathLike, encoding: str = "utf-8") -> io.TextIOBase:
    """Open a text file, trying `path` then `path + ".gz"`.

    Lets bundled data ship compressed while plain files keep working.
    """
    path = Path(path)
    if path.exists():
        if path.suffix == ".gz":
            return gzip.open(path, "rt", encoding=encoding)
        return open(path, "r", encoding=encoding)
    gz = path.with_name(path.name + ".gz")
    if gz.exists():
        return gzip.open(gz, "rt", encoding=encoding)
    raise DataError(f"missing file: {path} (also tried {gz.name})")
