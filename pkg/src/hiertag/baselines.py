"""Reference hierarchy extractors: Heymann-style greedy insertion and
Schmitz-style subsumption filtering.

The Heymann extractor inserts tags in descending generality into a growing
tree, attaching each to the most similar already-inserted tag (object-space
cosine similarity) or to a synthetic root when nothing is similar enough. The
Schmitz extractor keeps directed candidate links x -> y where x appears on at
least a fraction t_subsume of y's objects but not vice versa, prunes
transitive candidates, and resolves multi-parent conflicts.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .corpus import CooccurrenceNetwork
from .hierarchy import Hierarchy

SYNTHETIC_ROOT = "*root*"

CENTRALITY_KINDS = ("degree-strength", "closeness")


@dataclass(frozen=True)
class HeymannParams:
    similarity_threshold: float = 0.1
    centrality_kind: str = "degree-strength"

    def __post_init__(self):
        if self.centrality_kind not in CENTRALITY_KINDS:
            raise ValueError(
                f"unknown centrality kind {self.centrality_kind!r}, expected one of {CENTRALITY_KINDS}"
            )


def cosine_similarities(network: CooccurrenceNetwork) -> list[dict[int, float]]:
    """Object-space cosine per co-occurring pair: Q_ij / sqrt(Q_i * Q_j)."""
    freq = network.freq
    sims: list[dict[int, float]] = [{} for _ in range(network.n_tags)]
    for i, j, w in network.pairs():
        s = w / math.sqrt(freq[i] * freq[j])
        sims[i][j] = s
        sims[j][i] = s
    return sims


def _closeness(adj: list[list[int]], n: int) -> list[float]:
    scores = []
    for s in range(n):
        dist = {s: 0}
        queue = deque([s])
        total = 0
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    total += dist[v]
                    queue.append(v)
        reached = len(dist) - 1
        scores.append(reached / total if total else 0.0)
    return scores


def extract_heymann(
    network: CooccurrenceNetwork, params: HeymannParams = HeymannParams()
) -> Hierarchy:
    """Greedy tree construction; tags nothing resembles hang off a synthetic root.

    Insertion order is descending centrality in the similarity graph
    thresholded at the similarity threshold: degree-strength ranks by degree
    with frequency and tag id breaking ties, closeness by unweighted BFS
    closeness with the same tie-breaks. The synthetic root is part of the
    returned tree and carries the reserved name *root*.
    """
    n = network.n_tags
    if n == 0:
        raise ValueError("empty network")
    if SYNTHETIC_ROOT in network.names:
        raise ValueError(f"corpus uses the reserved tag name {SYNTHETIC_ROOT!r}")
    sims = cosine_similarities(network)
    theta = params.similarity_threshold
    graph = [[j for j, s in sims[i].items() if s >= theta] for i in range(n)]
    if params.centrality_kind == "degree-strength":
        key = [(len(graph[i]), network.freq[i], -i) for i in range(n)]
    else:
        closeness = _closeness(graph, n)
        key = [(closeness[i], network.freq[i], -i) for i in range(n)]
    order = sorted(range(n), key=lambda i: key[i], reverse=True)

    inserted: list[int] = []
    names = network.names
    edges = []
    for i in order:
        best = None
        best_sim = 0.0
        for j in inserted:
            s = sims[i].get(j, 0.0)
            if s > best_sim:
                best_sim = s
                best = j
        if best is not None and best_sim >= theta:
            edges.append((names[best], names[i]))
        else:
            edges.append((SYNTHETIC_ROOT, names[i]))
        inserted.append(i)
    return Hierarchy(names + (SYNTHETIC_ROOT,), edges)


def strip_synthetic_root(h: Hierarchy) -> Hierarchy:
    """Drop the synthetic root; its children become roots of the forest."""
    if SYNTHETIC_ROOT not in h.children:
        return h
    tags = [t for t in h.tags if t != SYNTHETIC_ROOT]
    edges = [(p, c) for p, c in h.edges if p != SYNTHETIC_ROOT and c != SYNTHETIC_ROOT]
    return Hierarchy(tags, edges)


@dataclass(frozen=True)
class SchmitzParams:
    t_subsume: float = 0.8
    min_cooccurrence: int = 10


def extract_schmitz(
    network: CooccurrenceNetwork, params: SchmitzParams = SchmitzParams()
) -> Hierarchy:
    """Subsumption forest: x -> y iff P(x|y) >= t, P(y|x) < t, Q_xy >= min count.

    Transitive candidates (x -> z alongside x -> y -> z) are pruned in one
    pass against the candidate set, then each child keeps the parent with the
    largest P(parent|child), ties broken by ascending tag id. Tags without
    qualifying links stay isolated, so the output is generally a sparse
    forest.
    """
    if network.n_tags == 0:
        raise ValueError("empty network")
    freq = network.freq
    t_sub = params.t_subsume
    candidates: list[tuple[int, int]] = []
    for i, j, w in network.pairs():
        if w < params.min_cooccurrence:
            continue
        p_i_given_j = w / freq[j]
        p_j_given_i = w / freq[i]
        if p_i_given_j >= t_sub and p_j_given_i < t_sub:
            candidates.append((i, j))
        elif p_j_given_i >= t_sub and p_i_given_j < t_sub:
            candidates.append((j, i))

    children: dict[int, set[int]] = {}
    parents: dict[int, set[int]] = {}
    for x, y in candidates:
        children.setdefault(x, set()).add(y)
        parents.setdefault(y, set()).add(x)
    kept = [
        (x, y)
        for x, y in candidates
        if not (children.get(x, set()) & parents.get(y, set()))
    ]

    best_parent: dict[int, int] = {}
    for x, y in kept:
        w = network.weight(x, y)
        if y not in best_parent:
            best_parent[y] = x
        else:
            cur = best_parent[y]
            w_cur = network.weight(cur, y)
            if w > w_cur or (w == w_cur and x < cur):
                best_parent[y] = x
    names = network.names
    edges = [(names[x], names[y]) for y, x in best_parent.items()]
    return Hierarchy(names, edges)
