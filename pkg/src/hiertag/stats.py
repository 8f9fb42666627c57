"""Statistical kernels for tag co-occurrence networks.

For a corpus of Q objects where tag i appears on Q_i of them, the number of
objects carrying both i and j under random assignment is hypergeometric:

    mean     <Q_ij> = Q_i * Q_j / Q
    variance sigma2 = (Q_i Q_j / Q) * ((Q - Q_i) / Q) * ((Q - Q_j) / (Q - 1))

and the z-score of an observed count is (Q_ij - <Q_ij>) / sigma. Degenerate
pairs (a tag on zero or on all objects) have sigma = 0 and score 0 by
convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

import numpy as np
from scipy import sparse

if TYPE_CHECKING:
    from .corpus import CooccurrenceNetwork


@dataclass(frozen=True)
class ZScoreInputs:
    q_total: int
    q_i: int
    q_j: int
    q_ij: int

    def __post_init__(self):
        if self.q_total < 1:
            raise ValueError("q_total must be >= 1")
        for name, q in (("q_i", self.q_i), ("q_j", self.q_j)):
            if not 0 <= q <= self.q_total:
                raise ValueError(f"{name} must be in [0, q_total], got {q}")
        if not 0 <= self.q_ij <= min(self.q_i, self.q_j):
            raise ValueError(f"q_ij must be in [0, min(q_i, q_j)], got {self.q_ij}")


def expected_cooccurrence(q_total: int, q_i: int, q_j: int) -> float:
    if q_total < 1:
        raise ValueError("q_total must be >= 1")
    return q_i * q_j / q_total


def cooccurrence_variance(q_total: int, q_i: int, q_j: int) -> float:
    if q_total < 2:
        raise ValueError("degenerate population: q_total must be >= 2")
    return (q_i * q_j / q_total) * ((q_total - q_i) / q_total) * ((q_total - q_j) / (q_total - 1))


def z_from_counts(q_total: int, q_i: int, q_j: int, q_ij: int) -> float:
    """Z-score of an observed co-occurrence count; 0.0 whenever sigma = 0."""
    if q_i == 0 or q_j == 0 or q_i == q_total or q_j == q_total:
        return 0.0
    return (q_ij - expected_cooccurrence(q_total, q_i, q_j)) / math.sqrt(
        cooccurrence_variance(q_total, q_i, q_j)
    )


def z_score(inputs: ZScoreInputs) -> float:
    return z_from_counts(inputs.q_total, inputs.q_i, inputs.q_j, inputs.q_ij)


def in_link_entropy(weights: Iterable[float]) -> float:
    """Shannon entropy (natural log) of a normalized weight list; [] -> 0.0."""
    ws = list(weights)
    if not ws:
        return 0.0
    if any(w <= 0 for w in ws):
        raise ValueError("in-link weights must be positive")
    total = float(sum(ws))
    return -sum((w / total) * math.log(w / total) for w in ws)


@dataclass(frozen=True)
class CentralityVector:
    scores: np.ndarray
    iterations: int


def eigenvector_centrality(
    network: "CooccurrenceNetwork", iterations: int = 100, tol: float | None = None
) -> CentralityVector:
    """Power iteration on the weighted co-occurrence adjacency.

    Starts from the strength vector (sum of incident weights), multiplies by
    the adjacency and renormalizes by the plain sum, for exactly `iterations`
    rounds (or until the L1 change drops below `tol`, if given). An all-zero
    weight matrix yields the uniform vector 1/N; tags isolated from the
    component carrying the dominant eigenvalue converge to 0.
    """
    n = network.n_tags
    if n == 0:
        raise ValueError("empty network")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    for i, nbrs in enumerate(network.adj):
        for j, w in nbrs.items():
            rows.append(i)
            cols.append(j)
            vals.append(float(w))
    if not vals:
        return CentralityVector(np.full(n, 1.0 / n), 0)
    mat = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))
    x = np.asarray(mat.sum(axis=1)).ravel()
    x /= x.sum()
    done = 0
    for _ in range(iterations):
        nxt = mat @ x
        nxt /= nxt.sum()
        done += 1
        if tol is not None and np.abs(nxt - x).sum() < tol:
            x = nxt
            break
        x = nxt
    return CentralityVector(x, done)
