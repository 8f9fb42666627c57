"""Forest extraction by network pruning and bottom-up centrality sweep.

The co-occurrence network is pruned to links that are either statistically
significant (z-score above a threshold) or cover the majority of one
endpoint's objects. Eigenvector centrality on the pruned network orders the
tags from peripheral to general; sweeping in ascending order, each tag picks
its parent among its pruned neighbors of higher centrality rank, scoring each
candidate by its z-score with the tag plus the z-scores with the tag's
already-attached descendants (each descendant contributing only through links
that qualify on their own). Tags with no candidate become roots.
"""
from __future__ import annotations

from dataclasses import dataclass

from .corpus import CooccurrenceNetwork
from .hierarchy import Hierarchy
from .stats import eigenvector_centrality, z_from_counts

CENTRALITY_ITERATIONS = 100


@dataclass(frozen=True)
class AlgoBParams:
    z_threshold: float = 10.0
    force_single_root: bool = False


def prune_network(network: CooccurrenceNetwork, z_threshold: float) -> CooccurrenceNetwork:
    """Keep pair {i, j} iff z_ij > z_threshold, or Q_ij >= Q_i/2, or Q_ij >= Q_j/2."""
    q = network.q_total
    freq = network.freq
    kept = []
    for i, j, w in network.pairs():
        if (
            w >= 0.5 * freq[i]
            or w >= 0.5 * freq[j]
            or z_from_counts(q, freq[i], freq[j], w) > z_threshold
        ):
            kept.append((i, j, w))
    return network.replace_pairs(kept)


def centrality_rank(pruned: CooccurrenceNetwork) -> list[int]:
    """Tags in ascending rank order: by centrality, frequency ties rank the
    more frequent tag higher, remaining ties by tag id (smaller id higher)."""
    cent = eigenvector_centrality(pruned, CENTRALITY_ITERATIONS).scores
    return sorted(range(pruned.n_tags), key=lambda i: (cent[i], pruned.freq[i], -i))


def extract_b(network: CooccurrenceNetwork, params: AlgoBParams = AlgoBParams()) -> Hierarchy:
    """Extract an acyclic forest; every parent outranks its child in centrality."""
    n = network.n_tags
    if n == 0:
        raise ValueError("empty network")
    q = network.q_total
    freq = network.freq
    thr = params.z_threshold
    pruned = prune_network(network, thr)
    order = centrality_rank(pruned)
    rank = [0] * n
    for pos, i in enumerate(order):
        rank[i] = pos

    parent: list[int | None] = [None] * n
    descendants: list[set[int]] = [set() for _ in range(n)]
    for i in order:
        nbrs = pruned.adj[i]
        candidates = [t for t in nbrs if rank[t] > rank[i]]
        if not candidates:
            continue
        score = {t: z_from_counts(q, freq[i], freq[t], nbrs[t]) for t in candidates}
        if descendants[i]:
            for t in candidates:
                # the i-t link must re-qualify, majority exception on the
                # i side only; then each attached descendant contributes
                # through its own qualifying link to t
                if not (nbrs[t] >= 0.5 * freq[i] or score[t] > thr):
                    continue
                gained = 0.0
                for d in descendants[i]:
                    w_dt = network.adj[d].get(t)
                    if w_dt is None:
                        continue
                    z_dt = z_from_counts(q, freq[d], freq[t], w_dt)
                    if z_dt > thr or w_dt >= 0.5 * freq[d]:
                        gained += z_dt
                score[t] += gained
        best = max(candidates, key=lambda t: (score[t], nbrs[t], -t))
        parent[i] = best
        descendants[best] |= descendants[i]
        descendants[best].add(i)

    if params.force_single_root:
        roots = [i for i in range(n) if parent[i] is None]
        if len(roots) > 1:
            top = max(roots, key=lambda r: rank[r])
            for r in roots:
                if r != top:
                    parent[r] = top

    names = network.names
    edges = [(names[p], names[c]) for c, p in enumerate(parent) if p is not None]
    return Hierarchy(names, edges)
