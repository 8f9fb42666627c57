"""Tag-object corpora and co-occurrence counting.

Objects files are UTF-8 text: one object per line, tags separated by TABs,
'#' comment lines and blank lines ignored. Duplicate tags within a line
collapse (set semantics), so a pair of tags is counted at most once per
object. With `with_ids=True` the first field of each line is an opaque
object id and is skipped.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class CorpusFormatError(ValueError):
    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


@dataclass(frozen=True)
class TagCorpus:
    """Interned corpus: tag names map to dense ids in first-appearance order.

    Objects are stored as sorted tuples of tag ids; `freq[i]` is the number of
    objects carrying tag i (Q_i), `n_objects` is Q.
    """

    names: tuple[str, ...]
    objects: tuple[tuple[int, ...], ...]
    freq: tuple[int, ...]
    index: dict[str, int] = field(repr=False, compare=False)

    @property
    def n_tags(self) -> int:
        return len(self.names)

    @property
    def n_objects(self) -> int:
        return len(self.objects)


def corpus_from_object_lists(object_tags: Iterable[Sequence[str]]) -> TagCorpus:
    names: list[str] = []
    index: dict[str, int] = {}
    objects: list[tuple[int, ...]] = []
    counts: list[int] = []
    for tags in object_tags:
        ids = set()
        for t in tags:
            i = index.get(t)
            if i is None:
                i = len(names)
                index[t] = i
                names.append(t)
                counts.append(0)
            ids.add(i)
        if not ids:
            raise CorpusFormatError("object with no tags")
        for i in ids:
            counts[i] += 1
        objects.append(tuple(sorted(ids)))
    if not objects:
        raise CorpusFormatError("zero objects")
    return TagCorpus(tuple(names), tuple(objects), tuple(counts), index)


def load_corpus(path: str, with_ids: bool = False) -> TagCorpus:
    names: list[str] = []
    index: dict[str, int] = {}
    objects: list[tuple[int, ...]] = []
    counts: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if with_ids:
                fields = fields[1:]
            if not fields:
                raise CorpusFormatError("object with no tags", lineno)
            ids = set()
            for t in fields:
                if not t:
                    raise CorpusFormatError("empty tag field", lineno)
                i = index.get(t)
                if i is None:
                    i = len(names)
                    index[t] = i
                    names.append(t)
                    counts.append(0)
                ids.add(i)
            for i in ids:
                counts[i] += 1
            objects.append(tuple(sorted(ids)))
    if not objects:
        raise CorpusFormatError("zero objects")
    return TagCorpus(tuple(names), tuple(objects), tuple(counts), index)


@dataclass(frozen=True)
class CooccurrenceNetwork:
    """Undirected co-occurrence counts Q_ij plus the corpus marginals Q, Q_i.

    `adj[i]` maps each co-occurring partner j to Q_ij; pairs with Q_ij = 0 are
    absent. The structure is symmetric: j in adj[i] iff i in adj[j].
    """

    names: tuple[str, ...]
    q_total: int
    freq: tuple[int, ...]
    adj: tuple[dict[int, int], ...]

    @property
    def n_tags(self) -> int:
        return len(self.names)

    @property
    def n_pairs(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj) // 2

    def weight(self, i: int, j: int) -> int:
        return self.adj[i].get(j, 0)

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        for i, nbrs in enumerate(self.adj):
            for j, w in nbrs.items():
                if i < j:
                    yield i, j, w

    def replace_pairs(self, pairs: Iterable[tuple[int, int, int]]) -> "CooccurrenceNetwork":
        """Same tags and marginals, different link set (e.g. after pruning)."""
        adj: tuple[dict[int, int], ...] = tuple({} for _ in self.names)
        for i, j, w in pairs:
            adj[i][j] = w
            adj[j][i] = w
        return CooccurrenceNetwork(self.names, self.q_total, self.freq, adj)


def count_pair_shard(objects: Iterable[tuple[int, ...]]) -> Counter:
    """Pair counts for one shard of objects; shard counters sum to the total."""
    counts: Counter = Counter()
    for obj in objects:
        if len(obj) > 1:
            counts.update(combinations(obj, 2))
    return counts


def build_cooccurrence(corpus: TagCorpus, threads: int = 1) -> CooccurrenceNetwork:
    if threads <= 1 or corpus.n_objects < 2 * threads:
        counts = count_pair_shard(corpus.objects)
    else:
        step = (corpus.n_objects + threads - 1) // threads
        shards = [corpus.objects[k : k + step] for k in range(0, corpus.n_objects, step)]
        counts = Counter()
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(count_pair_shard, shards):
                counts.update(part)
    adj: tuple[dict[int, int], ...] = tuple({} for _ in corpus.names)
    for (i, j), w in counts.items():
        adj[i][j] = w
        adj[j][i] = w
    return CooccurrenceNetwork(corpus.names, corpus.n_objects, corpus.freq, adj)
