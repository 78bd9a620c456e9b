"""Split concatenated identifiers into English words.

Cost model follows the usual Zipf assumption over a frequency-ranked word
list: cost(word) = log(rank * log N). Unknown chunks pay a length
proportional penalty so the split stays total, while known words always win
when available.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from schemavec.fileio import open_maybe_gzip

_ALPHA_RUNS = re.compile(r"[a-z]+")

# Flat cost added to every unknown word, on top of the per-character term.
_UNKNOWN_WORD_PENALTY = 9.0

# Cost comparisons tolerate float noise so length-equivalent unknown splits
# tie exactly and the word-count tie break can apply.
_COST_EPS = 1e-9


@dataclass(frozen=True)
class Segmentation:
    words: tuple[str, ...]
    cost: float


class FrequencyLexicon:
    """Words ranked 1..N by descending corpus frequency."""

    def __init__(self, ranks: dict[str, int]):
        if not ranks:
            raise ValueError("empty lexicon")
        self.ranks = ranks
        self.size = len(ranks)
        # log N is 0 for a single-word lexicon; floor keeps costs finite
        log_n = math.log(max(self.size, 2))
        self._log_n = log_n
        self._unknown_char_cost = math.log(self.size * log_n)

    def __contains__(self, word: str) -> bool:
        return word in self.ranks

    def __len__(self) -> int:
        return self.size

    def word_cost(self, word: str) -> float:
        rank = self.ranks.get(word)
        if rank is None:
            return len(word) * self._unknown_char_cost + _UNKNOWN_WORD_PENALTY
        # clamp keeps totals non-negative for degenerate two-word lexicons
        return max(0.0, math.log(rank * self._log_n))


def load_lexicon(stream) -> FrequencyLexicon:
    """Build a lexicon from one word per line, most frequent first.

    Duplicate words keep their first (best) rank. Accepts an open text
    stream or a path; paths may point at gzip files.
    """
    if isinstance(stream, str) or hasattr(stream, "__fspath__"):
        with open_maybe_gzip(stream) as handle:
            return load_lexicon(handle)
    ranks: dict[str, int] = {}
    rank = 0
    for line in stream:
        word = line.strip().lower()
        if not word:
            continue
        rank += 1
        ranks.setdefault(word, rank)
    if not ranks:
        raise ValueError("empty lexicon")
    return FrequencyLexicon(ranks)


def split_name(name: str, lexicon: FrequencyLexicon) -> Segmentation:
    """Split an identifier into words.

    Underscores, punctuation and digit runs are hard separators and are
    dropped. Each remaining alphabetic chunk is segmented by dynamic
    programming for minimal total cost; ties prefer fewer words, then
    earlier split positions.
    """
    words: list[str] = []
    total = 0.0
    for chunk in _ALPHA_RUNS.findall(name.lower()):
        chunk_words, chunk_cost = _split_chunk(chunk, lexicon)
        words.extend(chunk_words)
        total += chunk_cost
    return Segmentation(tuple(words), total)


def _split_chunk(chunk: str, lexicon: FrequencyLexicon) -> tuple[list[str], float]:
    # best[i]: (cost, word_count, split_positions) for chunk[:i]; positions are
    # the word start indexes, so lexicographic comparison prefers early splits.
    best: list[tuple[float, int, tuple[int, ...]]] = [(0.0, 0, ())]
    for end in range(1, len(chunk) + 1):
        chosen = None
        for start in range(end):
            prefix = best[start]
            candidate = (
                prefix[0] + lexicon.word_cost(chunk[start:end]),
                prefix[1] + 1,
                prefix[2] + (start,),
            )
            if chosen is None or _better(candidate, chosen):
                chosen = candidate
        best.append(chosen)
    cost, _, positions = best[len(chunk)]
    bounds = list(positions) + [len(chunk)]
    return [chunk[a:b] for a, b in zip(bounds, bounds[1:])], cost


def _better(candidate, incumbent) -> bool:
    if candidate[0] < incumbent[0] - _COST_EPS:
        return True
    if candidate[0] > incumbent[0] + _COST_EPS:
        return False
    return (candidate[1], candidate[2]) < (incumbent[1], incumbent[2])
