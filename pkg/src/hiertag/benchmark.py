"""Synthetic benchmark corpora generated from a pre-defined hierarchy.

Each object draws its first tag from a frequency profile; every further tag
either follows an undirected random walk started at that first tag (with
probability p_random_walk) or is an independent profile draw. The tag list
collapses to a set. Generation is seeded and splits into fixed-size chunks
with independent derived substreams, so output is byte-identical for a fixed
seed no matter how many worker threads assemble it.
"""
from __future__ import annotations

import math
import random
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator

from .corpus import TagCorpus, corpus_from_object_lists
from .hierarchy import Hierarchy
from .seeds import derive_seed

CHUNK_OBJECTS = 2048


def parse_count_distribution(text: str) -> tuple:
    """Parse a tags-per-object descriptor: "fixed:3" or "poisson:3.0"."""
    kind, _, arg = text.partition(":")
    if kind == "fixed":
        k = int(arg)
        if k < 1:
            raise ValueError("fixed tag count must be >= 1")
        return ("fixed", k)
    if kind == "poisson":
        lam = float(arg)
        if lam <= 0:
            raise ValueError("poisson mean must be > 0")
        return ("poisson", lam)
    raise ValueError(f"unknown tags-per-object distribution {text!r}")


def parse_walk_length(text: str) -> tuple:
    """Parse a walk-length descriptor: "uniform:1:3"."""
    parts = text.split(":")
    if len(parts) != 3 or parts[0] != "uniform":
        raise ValueError(f"unknown walk-length distribution {text!r}")
    lo, hi = int(parts[1]), int(parts[2])
    if not 1 <= lo <= hi:
        raise ValueError("walk length bounds must satisfy 1 <= lo <= hi")
    return ("uniform", lo, hi)


def parse_profile(text: str) -> tuple:
    """Parse a frequency-profile descriptor: "linear-depth" or "power-law:2.0"."""
    kind, _, arg = text.partition(":")
    if kind == "linear-depth":
        return ("linear-depth",)
    if kind == "power-law":
        exponent = float(arg) if arg else 2.0
        if exponent <= 0:
            raise ValueError("power-law exponent must be > 0")
        return ("power-law", exponent)
    raise ValueError(f"unknown frequency profile {text!r}")


@dataclass(frozen=True)
class BenchmarkConfig:
    object_count: int
    p_random_walk: float
    tags_per_object: tuple = ("poisson", 3.0)
    walk_length: tuple = ("uniform", 1, 3)
    frequency_profile: tuple = ("linear-depth",)
    seed: int = 0

    def __post_init__(self):
        if self.object_count < 1:
            raise ValueError("object_count must be >= 1")
        if not 0.0 <= self.p_random_walk <= 1.0:
            raise ValueError("p_random_walk must be in [0, 1]")


def frequency_profile(
    h: Hierarchy, kind: tuple, rng: random.Random | None = None
) -> dict[str, float]:
    """Per-tag sampling weights (not normalized).

    linear-depth: weight d_max - depth + 1, so roots are heaviest and the
    deepest level has weight 1. power-law: Zipf-like weights rank**-exponent
    assigned to tags by a random permutation, independent of depth (needs
    `rng`). explicit: a user table covering every tag.
    """
    if kind[0] == "linear-depth":
        depth = h.depths()
        d_max = max(depth.values())
        return {t: float(d_max - depth[t] + 1) for t in h.tags}
    if kind[0] == "power-law":
        if rng is None:
            raise ValueError("power-law profile needs a seeded rng for the permutation")
        exponent = kind[1]
        weights = [(r + 1) ** -exponent for r in range(h.n_tags)]
        order = list(range(h.n_tags))
        rng.shuffle(order)
        return {h.tags[i]: weights[r] for r, i in enumerate(order)}
    if kind[0] == "explicit":
        table = kind[1]
        missing = [t for t in h.tags if t not in table]
        if missing:
            raise ValueError(f"explicit profile is missing tags: {missing[:5]}")
        if any(table[t] <= 0 for t in h.tags):
            raise ValueError("explicit profile weights must be positive")
        return {t: float(table[t]) for t in h.tags}
    raise ValueError(f"unknown frequency profile kind {kind!r}")


def _poisson_draw(rng: random.Random, lam: float) -> int:
    # Knuth's method; fine for the small means used for tags-per-object
    limit = math.exp(-lam)
    k = 0
    p = 1.0
    while True:
        p *= rng.random()
        if p <= limit:
            return k
        k += 1


def _make_chunk(
    h_tags: tuple[str, ...],
    cum: list[float],
    nbrs: dict[str, tuple[str, ...]],
    config: BenchmarkConfig,
    chunk_index: int,
    count: int,
) -> list[list[str]]:
    rng = random.Random(derive_seed(config.seed, "objects", chunk_index))
    total = cum[-1]
    t_kind = config.tags_per_object
    w_lo, w_hi = config.walk_length[1], config.walk_length[2]
    p_rw = config.p_random_walk
    out = []
    for _ in range(count):
        if t_kind[0] == "fixed":
            n_t = t_kind[1]
        else:
            n_t = 0
            while n_t < 1:
                n_t = _poisson_draw(rng, t_kind[1])
        first = h_tags[min(bisect_right(cum, rng.random() * total), len(h_tags) - 1)]
        tags = [first]
        for _ in range(n_t - 1):
            if rng.random() < p_rw:
                steps = rng.randint(w_lo, w_hi)
                cur = first
                for _ in range(steps):
                    nb = nbrs[cur]
                    if nb:
                        cur = nb[rng.randrange(len(nb))]
                tags.append(cur)
            else:
                tags.append(h_tags[min(bisect_right(cum, rng.random() * total), len(h_tags) - 1)])
        seen = set()
        obj = []
        for t in tags:
            if t not in seen:
                seen.add(t)
                obj.append(t)
        out.append(obj)
    return out


def iter_object_tags(
    h: Hierarchy, config: BenchmarkConfig, threads: int = 1
) -> Iterator[list[str]]:
    """Objects in generation order, as lists of distinct tag names."""
    profile = frequency_profile(
        h, config.frequency_profile, rng=random.Random(derive_seed(config.seed, "profile"))
    )
    cum = list(accumulate(profile[t] for t in h.tags))
    nbrs = h.undirected_neighbors()
    n_chunks = (config.object_count + CHUNK_OBJECTS - 1) // CHUNK_OBJECTS
    sizes = [
        min(CHUNK_OBJECTS, config.object_count - ci * CHUNK_OBJECTS) for ci in range(n_chunks)
    ]
    if threads > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = pool.map(
                lambda ci: _make_chunk(h.tags, cum, nbrs, config, ci, sizes[ci]),
                range(n_chunks),
            )
            for chunk in chunks:
                yield from chunk
    else:
        for ci in range(n_chunks):
            yield from _make_chunk(h.tags, cum, nbrs, config, ci, sizes[ci])


def generate(h: Hierarchy, config: BenchmarkConfig, threads: int = 1) -> TagCorpus:
    """Generate a benchmark corpus from a hierarchy."""
    return corpus_from_object_lists(iter_object_tags(h, config, threads=threads))
