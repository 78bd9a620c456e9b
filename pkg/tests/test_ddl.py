import pytest
from hypothesis import given, settings, strategies as st

from schemavec.ddl import (
    ParseWarning,
    TableSchema,
    extract_schemas,
    normalize_identifier,
    read_corpus_file,
    schema_to_document,
    write_corpus_file,
)


def names_of(schemas):
    return [(s.table_name, list(s.columns)) for s in schemas]


def test_basic_statement_lowercases_identifiers():
    sql = "CREATE TABLE authors (authorID INT, firstName VARCHAR(50), lastName VARCHAR(50));"
    schemas, warnings = extract_schemas(sql)
    assert warnings == []
    assert names_of(schemas) == [("authors", ["authorid", "firstname", "lastname"])]


def test_no_create_table_yields_nothing():
    schemas, warnings = extract_schemas("SELECT * FROM t;")
    assert schemas == [] and warnings == []


def test_malformed_statement_warns_and_is_skipped():
    schemas, warnings = extract_schemas("CREATE TABLE a (x INT); CREATE TABLE broken (")
    assert names_of(schemas) == [("a", ["x"])]
    assert len(warnings) == 1
    assert "broken" in warnings[0].message


@pytest.mark.parametrize(
    "raw,expected",
    [
        ("`Users`", "users"),
        ("public.Order_Items", "order_items"),
        ("[FirstName]", "firstname"),
        ('"Quoted"', "quoted"),
        ("`db`.`tbl`", "tbl"),
        ("a.b.c", "c"),
    ],
)
def test_normalize_identifier(raw, expected):
    assert normalize_identifier(raw) == expected


def test_normalize_identifier_empty_result():
    assert normalize_identifier("``") == ""
    assert normalize_identifier("public.") == ""


def test_schema_to_document_order():
    schema = TableSchema("authors", ("authorid", "firstname", "lastname"))
    assert schema_to_document(schema) == ["authors", "authorid", "firstname", "lastname"]
    assert schema_to_document(TableSchema("t", ("c",))) == ["t", "c"]


def test_document_length_identity():
    schema = TableSchema("orders", ("id", "total", "status"))
    assert len(schema_to_document(schema)) == 1 + len(schema.columns)


def test_table_schema_invariants():
    with pytest.raises(ValueError):
        TableSchema("t", ())
    with pytest.raises(ValueError):
        TableSchema("bad name", ("x",))
    with pytest.raises(ValueError):
        TableSchema("t", ("col umn",))
    with pytest.raises(ValueError):
        TableSchema("", ("x",))


def test_keyword_case_and_if_not_exists():
    sql = """
    create table one (a INT);
    Create Table IF NOT EXISTS two (b INT);
    CREATE TEMPORARY TABLE three (c INT);
    """
    schemas, warnings = extract_schemas(sql)
    assert warnings == []
    assert [s.table_name for s in schemas] == ["one", "two", "three"]


def test_statements_in_comments_and_strings_ignored():
    sql = """
    -- CREATE TABLE in_line_comment (x INT);
    /* CREATE TABLE in_block_comment (y INT); */
    INSERT INTO log VALUES ('CREATE TABLE in_string (z INT);');
    # CREATE TABLE in_hash_comment (w INT);
    CREATE TABLE real_one (a INT);
    """
    schemas, warnings = extract_schemas(sql)
    assert warnings == []
    assert names_of(schemas) == [("real_one", ["a"])]


def test_constraints_are_not_columns():
    sql = """
    CREATE TABLE t (
      id INT NOT NULL AUTO_INCREMENT,
      name VARCHAR(100) DEFAULT 'x, y',
      price DECIMAL(10,2) CHECK (price > 0),
      PRIMARY KEY (id),
      FOREIGN KEY (name) REFERENCES other(name),
      UNIQUE KEY uq_name (name),
      KEY idx_price (price),
      INDEX idx2 (name, price),
      CONSTRAINT chk CHECK (id > 0)
    ) ENGINE=InnoDB DEFAULT CHARSET=utf8;
    """
    schemas, warnings = extract_schemas(sql)
    assert warnings == []
    assert names_of(schemas) == [("t", ["id", "name", "price"])]


def test_quoted_identifiers_and_qualifiers():
    sql = 'CREATE TABLE [dbo].[Order Details] ([Product ID] INT, [Qty] INT);'
    schemas, warnings = extract_schemas(sql)
    # "order details" and "product id" contain spaces, so the table name kills
    # the statement before columns matter
    assert schemas == []
    assert len(warnings) == 1

    sql2 = 'CREATE TABLE `shop`.`items` (`id` INT, `name` TEXT);'
    schemas2, warnings2 = extract_schemas(sql2)
    assert warnings2 == []
    assert names_of(schemas2) == [("items", ["id", "name"])]


def test_zero_column_table_dropped():
    schemas, warnings = extract_schemas("CREATE TABLE empty ();")
    assert schemas == []
    assert len(warnings) == 1
    assert "no parseable columns" in warnings[0].message


def test_duplicate_columns_kept():
    schemas, _ = extract_schemas("CREATE TABLE t (a INT, a INT, b INT);")
    assert names_of(schemas) == [("t", ["a", "a", "b"])]


def test_statements_without_semicolons():
    sql = "CREATE TABLE a (x INT) CREATE TABLE b (y INT)"
    schemas, warnings = extract_schemas(sql)
    assert warnings == []
    assert [s.table_name for s in schemas] == ["a", "b"]


def test_source_location_byte_offsets():
    prefix = "-- header comment with unicode: café\n"
    sql = prefix + "CREATE TABLE t (a INT);"
    schemas, _ = extract_schemas(sql, "f.sql")
    assert schemas[0].source == "f.sql"
    assert schemas[0].offset == len(prefix.encode("utf-8"))


def test_create_view_and_index_are_not_tables():
    sql = """
    CREATE VIEW v AS SELECT 1;
    CREATE INDEX idx ON t (a);
    CREATE TABLE t (a INT);
    """
    schemas, warnings = extract_schemas(sql)
    assert [s.table_name for s in schemas] == ["t"]
    assert warnings == []


_identifier = st.from_regex(r"[a-z][a-z0-9_]{0,10}", fullmatch=True)


@settings(max_examples=200, deadline=None)
@given(
    table=_identifier,
    columns=st.lists(_identifier, min_size=1, max_size=6),
)
def test_round_trip(table, columns):
    serialized = f"CREATE TABLE {table} ({', '.join(c + ' INT' for c in columns)});"
    schemas, warnings = extract_schemas(serialized)
    assert warnings == []
    assert names_of(schemas) == [(table, columns)]


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.tuples(_identifier, st.lists(_identifier, min_size=1, max_size=4)),
        min_size=0,
        max_size=6,
    )
)
def test_output_count_bounded_by_create_table_occurrences(tables):
    sql = "\n".join(
        f"CREATE TABLE {t} ({', '.join(c + ' INT' for c in cols)});" for t, cols in tables
    )
    schemas, _ = extract_schemas(sql)
    assert len(schemas) <= sql.lower().count("create table")


def test_emitted_tokens_are_clean(bundled_schemas):
    for schema in bundled_schemas:
        for token in (schema.table_name, *schema.columns):
            assert not any(c.isspace() for c in token)
            assert not any(c in "'\"`()[]" for c in token)


def test_bundled_schemas_round_trip(bundled_schemas):
    for schema in bundled_schemas:
        serialized = (
            f"CREATE TABLE {schema.table_name} "
            f"({', '.join(c + ' INT' for c in schema.columns)});"
        )
        again, warnings = extract_schemas(serialized)
        assert warnings == []
        assert names_of(again) == [(schema.table_name, list(schema.columns))]


def test_corpus_file_round_trip(tmp_path, bundled_schemas):
    path = tmp_path / "corpus.txt"
    write_corpus_file(path, bundled_schemas)
    loaded = read_corpus_file(path)
    assert [(s.table_name, s.columns) for s in loaded] == [
        (s.table_name, s.columns) for s in bundled_schemas
    ]
    text = path.read_text(encoding="utf-8")
    assert text.endswith("\n") and "\r" not in text


def test_corpus_file_rejects_header_only_lines(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("lonely\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_corpus_file(path)


def test_parse_warning_fields():
    warning = ParseWarning("f.sql", 10, "boom")
    assert (warning.source, warning.offset, warning.message) == ("f.sql", 10, "boom")
