"""Load WordNet noun data and compute path similarity between words.

Reads the Princeton database file formats directly (index.noun, data.noun,
noun.exc), nouns only. Path similarity between two words is the maximum of
1 / (1 + d) over their synset pairs, where d is the shortest distance in
the undirected hypernym graph. All roots hang off one virtual root so any
two indexed nouns are connected.

The database files may be stored gzip-compressed (index.noun.gz etc.);
they are found automatically.
"""

from __future__ import annotations

from collections import deque
from pathlib import Path

from schemavec.fileio import DataError, open_maybe_gzip

# Synset id of the virtual root; real offsets are non-negative.
_VIRTUAL_ROOT = -1

# Noun plural detachment suffixes, tried when the exception list has no entry.
_DETACHMENTS = (
    ("s", ""),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("ies", "y"),
    ("men", "man"),
)


class WordNetGraph:
    def __init__(
        self,
        lemma_index: dict[str, tuple[int, ...]],
        hypernyms: dict[int, tuple[int, ...]],
        exceptions: dict[str, tuple[str, ...]],
    ):
        self.lemma_index = lemma_index
        self.hypernyms = hypernyms
        self.exceptions = exceptions
        self.adjacency = self._build_adjacency()
        self._distance_cache: dict[tuple[str, str], float] = {}

    def _build_adjacency(self) -> dict[int, list[int]]:
        adjacency: dict[int, list[int]] = {s: [] for s in self.hypernyms}
        adjacency[_VIRTUAL_ROOT] = []
        for synset, parents in self.hypernyms.items():
            if not parents:
                adjacency[synset].append(_VIRTUAL_ROOT)
                adjacency[_VIRTUAL_ROOT].append(synset)
            for parent in parents:
                adjacency[synset].append(parent)
                adjacency.setdefault(parent, []).append(synset)
        return adjacency

    def synsets(self, lemma: str) -> tuple[int, ...]:
        return self.lemma_index.get(lemma, ())


def load_wordnet(directory: str | Path) -> WordNetGraph:
    """Load index.noun, data.noun and noun.exc from a WordNet database directory."""
    directory = Path(directory)
    lemma_index = _load_index(directory / "index.noun")
    hypernyms = _load_data(directory / "data.noun")
    exceptions = _load_exceptions(directory / "noun.exc")
    for lemma, synsets in lemma_index.items():
        for synset in synsets:
            if synset not in hypernyms:
                raise DataError(
                    f"index.noun: lemma {lemma!r} references offset {synset:08d}"
                    " missing from data.noun"
                )
    return WordNetGraph(lemma_index, hypernyms, exceptions)


def _data_lines(path: Path):
    try:
        handle = open_maybe_gzip(path)
    except DataError:
        raise DataError(f"WordNet load failed: missing {path.name} (or .gz) in {path.parent}")
    with handle:
        for lineno, line in enumerate(handle, 1):
            if line.startswith("  ") or not line.strip():
                continue  # license header lines start with two spaces
            yield lineno, line.rstrip("\n")


def _load_index(path: Path) -> dict[str, tuple[int, ...]]:
    index: dict[str, tuple[int, ...]] = {}
    for lineno, line in _data_lines(path):
        fields = line.split()
        try:
            lemma, pos, synset_cnt, p_cnt = fields[0], fields[1], int(fields[2]), int(fields[3])
            offsets = tuple(int(o) for o in fields[6 + p_cnt:])
        except (IndexError, ValueError) as exc:
            raise DataError(f"{path.name}:{lineno}: malformed index record") from exc
        if pos != "n":
            continue
        if len(offsets) != synset_cnt or synset_cnt < 1:
            raise DataError(f"{path.name}:{lineno}: synset count disagrees with offsets")
        index[lemma] = offsets
    if not index:
        raise DataError(f"{path.name}: no noun entries")
    return index


def _load_data(path: Path) -> dict[int, tuple[int, ...]]:
    hypernyms: dict[int, tuple[int, ...]] = {}
    for lineno, line in _data_lines(path):
        record = line.split(" | ")[0]
        fields = record.split()
        try:
            offset = int(fields[0])
            w_cnt = int(fields[3], 16)
            cursor = 4 + 2 * w_cnt
            p_cnt = int(fields[cursor])
            cursor += 1
            parents = []
            for _ in range(p_cnt):
                symbol, target, pos = fields[cursor], fields[cursor + 1], fields[cursor + 2]
                cursor += 4
                if symbol in ("@", "@i") and pos == "n":
                    parents.append(int(target))
        except (IndexError, ValueError) as exc:
            raise DataError(f"{path.name}:{lineno}: malformed data record") from exc
        hypernyms[offset] = tuple(parents)
    if not hypernyms:
        raise DataError(f"{path.name}: no synset records")
    return hypernyms


def _load_exceptions(path: Path) -> dict[str, tuple[str, ...]]:
    exceptions: dict[str, tuple[str, ...]] = {}
    for lineno, line in _data_lines(path):
        fields = line.split()
        if len(fields) < 2:
            raise DataError(f"{path.name}:{lineno}: malformed exception record")
        exceptions[fields[0]] = tuple(fields[1:])
    return exceptions


def lemmatize(word: str, graph: WordNetGraph) -> set[str]:
    """Return indexed base forms of a noun, or {word} when nothing matches.

    The exception list wins over suffix detachment; the word itself is kept
    whenever it is indexed.
    """
    candidates = set()
    if word in graph.lemma_index:
        candidates.add(word)
    exception_bases = graph.exceptions.get(word)
    if exception_bases:
        candidates.update(b for b in exception_bases if b in graph.lemma_index)
    else:
        for suffix, replacement in _DETACHMENTS:
            if word.endswith(suffix):
                base = word[: len(word) - len(suffix)] + replacement
                if base and base in graph.lemma_index:
                    candidates.add(base)
    return candidates or {word}


def path_similarity(word1: str, word2: str, graph: WordNetGraph) -> float:
    """Similarity in [0, 1]; 1.0 means a shared synset (or equal unknown words)."""
    sources = _word_synsets(word1, graph)
    targets = _word_synsets(word2, graph)
    if not sources or not targets:
        return 1.0 if word1 == word2 else 0.0
    key = (word1, word2) if word1 <= word2 else (word2, word1)
    cached = graph._distance_cache.get(key)
    if cached is not None:
        return cached
    distance = _min_distance(graph.adjacency, sources, targets)
    similarity = 1.0 / (1.0 + distance)
    graph._distance_cache[key] = similarity
    return similarity


def _word_synsets(word: str, graph: WordNetGraph) -> frozenset[int]:
    synsets = set()
    for base in lemmatize(word, graph):
        synsets.update(graph.synsets(base))
    return frozenset(synsets)


def _min_distance(adjacency, sources: frozenset[int], targets: frozenset[int]) -> int:
    """Multi-source BFS: shortest distance from any source to any target."""
    if sources & targets:
        return 0
    seen = set(sources)
    frontier = deque((s, 0) for s in sources)
    while frontier:
        node, dist = frontier.popleft()
        for neighbor in adjacency[node]:
            if neighbor in seen:
                continue
            if neighbor in targets:
                return dist + 1
            seen.add(neighbor)
            frontier.append((neighbor, dist + 1))
    raise DataError("disconnected synsets despite virtual root")  # unreachable on valid data
