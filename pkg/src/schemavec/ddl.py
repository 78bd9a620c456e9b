"""Recognize CREATE TABLE statements in SQL text and extract name records.

This is a permissive recognizer for the CREATE TABLE subset of MySQL,
PostgreSQL and SQLite surface syntax, not a full SQL parser. Everything it
does not understand inside a statement is consumed and dropped; statements
it cannot finish parsing produce a ParseWarning and are skipped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from schemavec.fileio import atomic_write, open_maybe_gzip

# Identifier charset after normalization. $ and # occur in real-world Oracle
# and MySQL dumps; anything else disqualifies the name.
_NAME_RE = re.compile(r"[a-z0-9_$#]+\Z")

# Bare (unquoted) identifier characters, before normalization.
_BARE_CHARS = re.compile(r"[A-Za-z0-9_$#\.]")

# Column-list items led by these keywords define constraints, not columns.
_CONSTRAINT_STARTERS = {
    "constraint",
    "primary",
    "foreign",
    "unique",
    "key",
    "index",
    "check",
    "fulltext",
    "spatial",
    "exclude",
    "like",
    "period",
}

_TABLE_MODIFIERS = {"temp", "temporary", "global", "local", "unlogged", "external", "virtual"}


@dataclass(frozen=True)
class TableSchema:
    """One table's name and its column names, all normalized to lowercase."""

    table_name: str
    columns: tuple[str, ...]
    source: str = "<string>"
    offset: int = 0

    def __post_init__(self):
        if not self.columns:
            raise ValueError("TableSchema requires at least one column")
        for name in (self.table_name, *self.columns):
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid identifier token: {name!r}")


@dataclass(frozen=True)
class ParseWarning:
    source: str
    offset: int
    message: str


def normalize_identifier(raw: str) -> str:
    """Strip quoting, drop any schema qualifier, and lowercase.

    Returns "" when nothing remains, which callers must treat as a parse
    failure for the surrounding statement or column.
    """
    stripped = raw.translate({ord(c): None for c in "`\"[]"}).strip()
    if "." in stripped:
        stripped = stripped.rsplit(".", 1)[1]
    return stripped.strip().lower()


def schema_to_document(schema: TableSchema) -> list[str]:
    """Order the table name before its columns, forming one training document."""
    return [schema.table_name, *schema.columns]


class _Scanner:
    """Cursor over SQL text that knows how to skip comments and quoted regions."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.n = len(text)

    def eof(self) -> bool:
        return self.pos >= self.n

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < self.n else ""

    def skip_space_and_comments(self):
        text, n = self.text, self.n
        while self.pos < n:
            c = text[self.pos]
            if c.isspace():
                self.pos += 1
            elif text.startswith("--", self.pos) or c == "#":
                nl = text.find("\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif text.startswith("/*", self.pos):
                end = text.find("*/", self.pos + 2)
                self.pos = n if end < 0 else end + 2
            else:
                return

    def skip_quoted(self, quote: str, doubling: bool = True) -> bool:
        """Advance past a quoted region opened at the cursor. False if unterminated."""
        closer = "]" if quote == "[" else quote
        self.pos += 1
        text, n = self.text, self.n
        while self.pos < n:
            idx = text.find(closer, self.pos)
            if idx < 0:
                self.pos = n
                return False
            if doubling and idx + 1 < n and text[idx + 1] == closer:
                self.pos = idx + 2
                continue
            self.pos = idx + 1
            return True
        return False

    def read_word(self) -> str:
        """Read a bare keyword-ish token ([A-Za-z_]+), empty at non-letters."""
        m = re.match(r"[A-Za-z_]+", self.text[self.pos:])
        if not m:
            return ""
        self.pos += m.end()
        return m.group(0)

    def read_identifier(self) -> str | None:
        """Read a possibly quoted, possibly dot-qualified identifier, raw form.

        Returns None when the cursor is not at an identifier or a quoted part
        is unterminated.
        """
        parts: list[str] = []
        while True:
            self.skip_space_and_comments()
            c = self.peek()
            start = self.pos
            if c in ("`", '"', "["):
                if not self.skip_quoted(c):
                    return None
                parts.append(self.text[start:self.pos])
            elif c and _BARE_CHARS.match(c) and c != ".":
                while self.pos < self.n and _BARE_CHARS.match(self.text[self.pos]) and self.text[self.pos] != ".":
                    self.pos += 1
                parts.append(self.text[start:self.pos])
            else:
                return None
            if self.peek() == ".":
                self.pos += 1
                parts.append(".")
                continue
            return "".join(parts)


class _ByteOffsets:
    """Incremental char-position to UTF-8 byte-offset conversion."""

    def __init__(self, text: str):
        self.text = text
        self.char = 0
        self.byte = 0

    def at(self, char_pos: int) -> int:
        if char_pos < self.char:
            self.char, self.byte = 0, 0
        self.byte += len(self.text[self.char:char_pos].encode("utf-8"))
        self.char = char_pos
        return self.byte


def extract_schemas(sql_text: str, source_name: str = "<string>") -> tuple[list[TableSchema], list[ParseWarning]]:
    """Extract one TableSchema per well-formed CREATE TABLE statement.

    Content around statements is ignored, including statements hidden inside
    comments or string literals. A file with no CREATE TABLE yields an empty
    list, never an error.
    """
    scanner = _Scanner(sql_text)
    offsets = _ByteOffsets(sql_text)
    schemas: list[TableSchema] = []
    warnings: list[ParseWarning] = []

    while not scanner.eof():
        scanner.skip_space_and_comments()
        if scanner.eof():
            break
        c = scanner.peek()
        if c in ("'", '"', "`"):
            scanner.skip_quoted(c)
            continue
        if not c.isalpha():
            scanner.pos += 1
            continue
        word_start = scanner.pos
        word = scanner.read_word()
        if word.lower() != "create":
            continue
        statement_offset = offsets.at(word_start)
        scanner.skip_space_and_comments()
        keyword = scanner.read_word()
        while keyword.lower() in _TABLE_MODIFIERS:
            scanner.skip_space_and_comments()
            keyword = scanner.read_word()
        if keyword.lower() != "table":
            continue

        def warn(message: str):
            warnings.append(ParseWarning(source_name, statement_offset, message))

        schema = _parse_create_table(scanner, source_name, statement_offset, warn)
        if schema is not None:
            schemas.append(schema)
    return schemas, warnings


def _parse_create_table(scanner: _Scanner, source: str, offset: int, warn) -> TableSchema | None:
    scanner.skip_space_and_comments()
    # Tolerate IF NOT EXISTS in any keyword case.
    mark = scanner.pos
    if scanner.read_word().lower() == "if":
        scanner.skip_space_and_comments()
        if scanner.read_word().lower() == "not":
            scanner.skip_space_and_comments()
            scanner.read_word()
        else:
            scanner.pos = mark
    else:
        scanner.pos = mark

    raw_name = scanner.read_identifier()
    if raw_name is None:
        warn("expected table name")
        return None
    table_name = normalize_identifier(raw_name)
    if not table_name or not _NAME_RE.match(table_name):
        warn(f"unusable table name {raw_name!r}")
        return None

    scanner.skip_space_and_comments()
    if scanner.peek() != "(":
        warn(f"table {table_name!r}: expected column list")
        return None
    scanner.pos += 1

    columns: list[str] = []
    closed = False
    while not scanner.eof():
        scanner.skip_space_and_comments()
        if scanner.peek() == ")":
            scanner.pos += 1
            closed = True
            break
        if scanner.peek() == ",":
            scanner.pos += 1
            continue
        mark = scanner.pos
        word = scanner.read_word()
        if word and word.lower() in _CONSTRAINT_STARTERS:
            if not _consume_item(scanner):
                break
            continue
        scanner.pos = mark
        raw_column = scanner.read_identifier()
        if raw_column is None:
            if not _consume_item(scanner):
                break
            continue
        column = normalize_identifier(raw_column)
        if column and _NAME_RE.match(column):
            columns.append(column)
        else:
            warn(f"table {table_name!r}: unusable column identifier {raw_column!r}")
        if not _consume_item(scanner):
            break

    if not closed:
        warn(f"table {table_name!r}: unterminated column list")
        return None
    if not columns:
        warn(f"table {table_name!r}: no parseable columns")
        return None

    _consume_statement_tail(scanner)
    return TableSchema(table_name, tuple(columns), source, offset)


def _consume_item(scanner: _Scanner) -> bool:
    """Advance to the next top-level ',' inside the column list, or stop at ')'.

    Nested parentheses (type args, CHECK expressions) and quoted regions are
    consumed whole. Returns False when input ends before the list closes.
    """
    depth = 0
    while not scanner.eof():
        scanner.skip_space_and_comments()
        c = scanner.peek()
        if c in ("'", '"', "`", "["):
            scanner.skip_quoted(c)
            continue
        if c == "(":
            depth += 1
        elif c == ")":
            if depth == 0:
                return True
            depth -= 1
        elif c == "," and depth == 0:
            return True
        scanner.pos += 1
    return False


def _consume_statement_tail(scanner: _Scanner):
    """Skip table options (ENGINE=, AS SELECT...) until ';' or the next CREATE."""
    while not scanner.eof():
        scanner.skip_space_and_comments()
        c = scanner.peek()
        if c == ";":
            scanner.pos += 1
            return
        if c in ("'", '"', "`"):
            scanner.skip_quoted(c)
            continue
        if c.isalpha():
            mark = scanner.pos
            if scanner.read_word().lower() == "create":
                scanner.pos = mark
                return
            continue
        scanner.pos += 1


def write_corpus_file(path, schemas: list[TableSchema]):
    """One schema per line: table name then columns, space separated."""
    with atomic_write(path) as handle:
        for schema in schemas:
            handle.write(" ".join(schema_to_document(schema)))
            handle.write("\n")


def read_corpus_file(path) -> list[TableSchema]:
    """Parse the corpus format back into schemas, skipping blank lines."""
    schemas = []
    with open_maybe_gzip(path) as handle:
        for lineno, line in enumerate(handle, 1):
            tokens = line.split()
            if not tokens:
                continue
            if len(tokens) < 2:
                raise ValueError(f"{path}:{lineno}: document needs a table name and at least one column")
            schemas.append(TableSchema(tokens[0], tuple(tokens[1:]), str(path), lineno))
    return schemas


def read_document_file(path) -> list[list[str]]:
    """Read training documents without imposing schema structure."""
    with open_maybe_gzip(path) as handle:
        return [line.split() for line in handle if line.strip()]
