#!/usr/bin/env python3
"""Regenerate the bundled synthetic schema corpus (data/corpus/synthetic_schemas.sql).

The corpus imitates a small crawl of application schemas: a few dozen
logical tables, each defined several times with overlapping column sets and
varied dialect dressing. Names are common English words so the whole corpus
survives cleaning; the script asserts that before writing.

Deterministic: same script, same output bytes.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from schemavec.cleaning import clean_corpus
from schemavec.ddl import extract_schemas

SEED = 20240501

# topic -> {table name: column pool}; every table is emitted several times
# with different column subsets, like independent projects defining it.
TOPICS = {
    "accounts": {
        "users": ["id", "username", "email", "password", "firstname", "lastname", "created", "active"],
        "accounts": ["id", "userid", "balance", "currency", "created", "status"],
        "sessions": ["id", "userid", "token", "expires", "created"],
        "profiles": ["id", "userid", "avatar", "biography", "website", "location"],
    },
    "library": {
        "books": ["id", "isbn", "title", "author", "publisher", "pages", "published"],
        "authors": ["authorid", "firstname", "lastname", "country", "born"],
        "loans": ["id", "bookid", "memberid", "borrowed", "returned", "due"],
        "members": ["memberid", "firstname", "lastname", "email", "joined"],
    },
    "commerce": {
        "orders": ["id", "customerid", "total", "status", "created", "shipped"],
        "products": ["id", "name", "price", "stock", "category", "description"],
        "customers": ["id", "firstname", "lastname", "email", "phone", "address"],
        "payments": ["id", "orderid", "amount", "method", "paid", "currency"],
        "invoices": ["id", "orderid", "number", "issued", "due", "total"],
    },
    "blog": {
        "posts": ["id", "title", "body", "authorid", "published", "updated", "slug"],
        "comments": ["id", "postid", "userid", "content", "created", "approved"],
        "tags": ["id", "name", "slug", "count"],
        "categories": ["id", "name", "parentid", "description", "slug"],
    },
    "calendar": {
        "events": ["id", "title", "location", "eventdate", "starttime", "endtime", "organizer"],
        "holidays": ["id", "name", "holidaydate", "country", "recurring"],
        "appointments": ["id", "userid", "subject", "scheduled", "duration", "notes"],
        "reminders": ["id", "eventid", "userid", "remindat", "sent"],
    },
    "kitchen": {
        "recipes": ["id", "title", "instructions", "servings", "preparation", "cooking"],
        "ingredients": ["id", "recipeid", "name", "quantity", "unit"],
        "meals": ["id", "name", "mealdate", "recipeid", "rating"],
    },
    "school": {
        "students": ["id", "firstname", "lastname", "email", "enrolled", "grade"],
        "courses": ["id", "title", "teacherid", "credits", "semester", "room"],
        "teachers": ["id", "firstname", "lastname", "email", "department", "hired"],
        "grades": ["id", "studentid", "courseid", "grade", "graded"],
        "lessons": ["id", "courseid", "title", "scheduled", "room", "duration"],
    },
    "warehouse": {
        "items": ["id", "name", "sku", "quantity", "location", "weight"],
        "shipments": ["id", "orderid", "carrier", "tracking", "shipped", "delivered"],
        "suppliers": ["id", "name", "contact", "email", "phone", "address", "country"],
        "stocks": ["id", "itemid", "warehouseid", "quantity", "updated"],
    },
    "media": {
        "movies": ["id", "title", "director", "released", "runtime", "rating", "genre"],
        "songs": ["id", "title", "artist", "album", "duration", "released"],
        "albums": ["id", "title", "artist", "released", "tracks", "label"],
        "playlists": ["id", "userid", "name", "created", "public"],
        "reviews": ["id", "userid", "movieid", "rating", "content", "created"],
    },
    "travel": {
        "flights": ["id", "number", "origin", "destination", "departure", "arrival", "capacity"],
        "bookings": ["id", "flightid", "passengerid", "seat", "booked", "price"],
        "passengers": ["id", "firstname", "lastname", "passport", "nationality", "born"],
        "hotels": ["id", "name", "city", "country", "stars", "rooms"],
    },
    "projects": {
        "projects": ["id", "name", "description", "ownerid", "started", "deadline", "budget"],
        "tasks": ["id", "projectid", "title", "assigned", "priority", "completed", "due"],
        "milestones": ["id", "projectid", "title", "reached", "target"],
        "positions": ["id", "title", "department", "salary", "openings", "posted"],
        "employees": ["id", "firstname", "lastname", "position", "hired", "salary", "managerid"],
    },
    "messaging": {
        "messages": ["id", "senderid", "recipientid", "subject", "body", "sent", "read"],
        "conversations": ["id", "title", "created", "updated", "archived"],
        "notifications": ["id", "userid", "content", "created", "seen", "kind"],
        "contacts": ["id", "userid", "friendid", "added", "blocked"],
    },
    "health": {
        "patients": ["id", "firstname", "lastname", "born", "gender", "phone", "address"],
        "doctors": ["id", "firstname", "lastname", "specialty", "phone", "email"],
        "visits": ["id", "patientid", "doctorid", "visitdate", "diagnosis", "notes"],
        "prescriptions": ["id", "visitid", "medication", "dosage", "issued", "expires"],
    },
    "sports": {
        "teams": ["id", "name", "city", "founded", "stadium", "coach"],
        "players": ["id", "firstname", "lastname", "teamid", "number", "position", "born"],
        "matches": ["id", "home", "away", "matchdate", "score", "attendance"],
        "seasons": ["id", "year", "league", "started", "finished", "champion"],
    },
    "finance": {
        "transactions": ["id", "accountid", "amount", "currency", "created", "category", "memo"],
        "budgets": ["id", "userid", "category", "amount", "month", "year"],
        "expenses": ["id", "userid", "amount", "spent", "category", "receipt"],
        "salaries": ["id", "employeeid", "amount", "currency", "paid", "month"],
    },
}

INT_TYPES = ["INT", "INTEGER", "BIGINT"]
TIME_TYPES = ["DATE", "DATETIME", "TIMESTAMP"]
MONEY_TYPES = ["DECIMAL(10,2)", "FLOAT"]
TEXT_TYPES = ["VARCHAR(50)", "VARCHAR(255)", "TEXT"]

TIME_WORDS = {"created", "updated", "born", "joined", "hired", "issued", "paid", "sent",
              "expires", "scheduled", "borrowed", "returned", "due", "shipped", "delivered",
              "published", "released", "started", "finished", "reached", "posted", "added",
              "spent", "graded", "booked", "enrolled", "founded", "departure", "arrival",
              "remindat", "starttime", "endtime"}
MONEY_WORDS = {"amount", "price", "total", "balance", "salary", "budget", "weight"}
FLAG_WORDS = {"active", "approved", "archived", "seen", "read", "sent", "blocked",
              "public", "recurring", "completed"}


def column_type(rng: random.Random, column: str) -> str:
    if column == "id" or column.endswith("id"):
        return rng.choice(INT_TYPES)
    if column in TIME_WORDS or column.endswith("date"):
        return rng.choice(TIME_TYPES)
    if column in MONEY_WORDS:
        return rng.choice(MONEY_TYPES)
    if column in FLAG_WORDS:
        return "BOOLEAN"
    if column in {"pages", "stock", "quantity", "count", "duration", "tracks", "rooms",
                  "stars", "capacity", "number", "openings", "servings", "rating",
                  "credits", "year", "month"}:
        return rng.choice(INT_TYPES)
    return rng.choice(TEXT_TYPES)

CAMEL = {
    "firstname": "firstName", "lastname": "lastName", "userid": "userID",
    "authorid": "authorID", "eventdate": "eventDate", "holidaydate": "holidayDate",
    "recipeid": "recipeID", "orderid": "orderID",
}


def render_statement(rng: random.Random, style: int, table: str, columns: list[str]) -> str:
    def dress(name):
        if style == 1:
            return f"`{name}`"
        if style == 2:
            return f'"{name}"'
        if style == 3:
            return f"[{name}]"
        if style == 4 and name in CAMEL:
            return CAMEL[name]
        return name

    keyword = "create table" if style == 5 else "CREATE TABLE"
    prefix = "IF NOT EXISTS " if style == 2 else ""
    qualifier = "[dbo]." if style == 3 else ""
    lines = []
    for column in columns:
        ctype = column_type(rng, column)
        if column == "id":
            constraint = " PRIMARY KEY" if style in (0, 5) else " NOT NULL"
        else:
            constraint = rng.choice(["", " NOT NULL", " DEFAULT NULL", " NOT NULL DEFAULT 0", " UNIQUE", ""])
        lines.append(f"  {dress(column)} {ctype}{constraint}")
    if style in (1, 3) and "id" in columns:
        lines.append(f"  PRIMARY KEY ({dress('id')})")
    if style == 1 and len(columns) > 3:
        ref = rng.choice(columns[1:])
        lines.append(f"  KEY idx_{table}_{ref} ({dress(ref)})")
    body = ",\n".join(lines)
    tail = " ENGINE=InnoDB DEFAULT CHARSET=utf8" if style == 1 else ""
    return f"{keyword} {prefix}{qualifier}{dress(table)} (\n{body}\n){tail};"


def generate() -> str:
    rng = random.Random(SEED)
    statements = [
        "-- synthetic application schemas for desk-scale runs",
        "-- regenerate with scripts/gen_synthetic_corpus.py",
        "",
    ]
    emitted = 0
    for topic, tables in TOPICS.items():
        statements.append(f"-- {topic}")
        for table, pool in tables.items():
            repeats = rng.choice([3, 3, 4])
            for repeat in range(repeats):
                if repeat < 2:
                    # full pool twice so every token's trigrams repeat corpus-wide
                    columns = list(pool)
                else:
                    keep = max(3, len(pool) - rng.randint(0, 3))
                    columns = [pool[0]] + rng.sample(pool[1:], keep - 1)
                style = rng.randint(0, 5)
                statements.append(render_statement(rng, style, table, columns))
                emitted += 1
        statements.append("")
    statements.append("-- noise the extractor must ignore")
    statements.append("SELECT * FROM users WHERE username = 'CREATE TABLE fake (x INT)';")
    statements.append("/* CREATE TABLE commented_out (y INT); */")
    statements.append("INSERT INTO tags (name) VALUES ('create table quoted');")
    return "\n".join(statements) + "\n", emitted


def main():
    out_path = Path(__file__).resolve().parent.parent / "src" / "schemavec" / "data" / "corpus" / "synthetic_schemas.sql"
    text, emitted = generate()
    schemas, warnings = extract_schemas(text, str(out_path))
    assert not warnings, warnings
    assert len(schemas) == emitted, (len(schemas), emitted)
    kept, report = clean_corpus(schemas)
    assert len(kept) == len(schemas), f"cleaning rejected bundled schemas: {report.records}"
    unique = len({s.table_name for s in schemas})
    out_path.write_text(text, encoding="utf-8")
    print(f"wrote {out_path}: {len(schemas)} schemas, {unique} unique table names")


if __name__ == "__main__":
    main()
