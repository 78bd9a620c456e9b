"""Filter test and dummy schemas out of an extracted corpus.

Four rules, checked cheapest first: single repeated character, special
characters, digit-heavy names, and names made mostly of corpus-unique
trigrams. A schema is dropped when its table name or any column fails.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from schemavec.ddl import TableSchema

RULE_RARE_TRIGRAMS = 1
RULE_SPECIAL_CHARS = 2
RULE_DIGIT_HEAVY = 3
RULE_REPEATED_CHAR = 4

# Check order puts the O(len) scans before the trigram lookup.
_RULE_ORDER = (RULE_REPEATED_CHAR, RULE_SPECIAL_CHARS, RULE_DIGIT_HEAVY, RULE_RARE_TRIGRAMS)

_PLAIN_CHARS = frozenset("abcdefghijklmnopqrstuvwxyz0123456789_")


@dataclass(frozen=True)
class CleanConfig:
    rare_trigram_fraction: float = 0.5
    digit_fraction: float = 0.3
    special_char_set: frozenset[str] | None = None  # None means complement of [a-z0-9_]

    def __post_init__(self):
        if not 0.0 <= self.rare_trigram_fraction <= 1.0:
            raise ValueError("rare_trigram_fraction must lie in [0, 1]")
        if not 0.0 <= self.digit_fraction <= 1.0:
            raise ValueError("digit_fraction must lie in [0, 1]")

    def is_special(self, char: str) -> bool:
        if self.special_char_set is not None:
            return char in self.special_char_set
        return char not in _PLAIN_CHARS


@dataclass
class RejectionReport:
    counts: Counter = field(default_factory=Counter)
    records: list[tuple[str, int]] = field(default_factory=list)

    def add(self, name: str, rule: int):
        self.counts[rule] += 1
        self.records.append((name, rule))

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def summary(self) -> str:
        lines = [f"rejected {self.total} schema(s)"]
        labels = {
            RULE_RARE_TRIGRAMS: "mostly unique trigrams",
            RULE_SPECIAL_CHARS: "special characters",
            RULE_DIGIT_HEAVY: "digit heavy",
            RULE_REPEATED_CHAR: "single repeated character",
        }
        for rule in sorted(self.counts):
            lines.append(f"  rule {rule} ({labels[rule]}): {self.counts[rule]}")
        return "\n".join(lines)

    def write_log(self, handle):
        for name, rule in self.records:
            handle.write(f"{name}\t{rule}\n")


def name_trigrams(name: str) -> list[str]:
    return [name[i:i + 3] for i in range(len(name) - 2)]


def build_trigram_counts(corpus: list[TableSchema]) -> Counter:
    """Count character trigrams over every table and column name in the corpus."""
    counts: Counter = Counter()
    for schema in corpus:
        for name in (schema.table_name, *schema.columns):
            counts.update(name_trigrams(name))
    return counts


def check_name(name: str, counts: Counter, config: CleanConfig) -> int | None:
    """Return the first violated rule id, or None when the name is acceptable."""
    if len(name) >= 2 and name == name[0] * len(name):
        return RULE_REPEATED_CHAR
    if any(config.is_special(c) for c in name):
        return RULE_SPECIAL_CHARS
    digits = sum(c.isdigit() for c in name)
    if digits > config.digit_fraction * len(name):
        return RULE_DIGIT_HEAVY
    trigrams = name_trigrams(name)
    if trigrams:  # names shorter than 3 characters are exempt
        rare = sum(counts[t] <= 1 for t in trigrams)
        if rare >= config.rare_trigram_fraction * len(trigrams):
            return RULE_RARE_TRIGRAMS
    return None


def clean_corpus(
    corpus: list[TableSchema], config: CleanConfig | None = None
) -> tuple[list[TableSchema], RejectionReport]:
    """Drop schemas containing any rejected name; order of survivors is preserved.

    Each dropped schema contributes one rejection record, attributed to the
    first offending name (table name first, then columns in order).
    """
    config = config or CleanConfig()
    report = RejectionReport()
    if not corpus:
        return [], report
    counts = build_trigram_counts(corpus)
    kept = []
    for schema in corpus:
        rejected = False
        for name in (schema.table_name, *schema.columns):
            rule = check_name(name, counts, config)
            if rule is not None:
                report.add(name, rule)
                rejected = True
                break
        if not rejected:
            kept.append(schema)
    return kept, report
