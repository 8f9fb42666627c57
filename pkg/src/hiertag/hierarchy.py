"""Directed tag hierarchies: loading, saving, descendant tables, rewiring.

A hierarchy is a directed acyclic graph over tags, with edges pointing from
ancestor to descendant. Files are line-oriented: one "parent TAB child" edge
per line, '#' comment lines, blank lines ignored, and a line without a TAB
declares an isolated tag.
"""
from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Iterator


class CycleError(ValueError):
    """An edge set that was required to be acyclic contains a directed cycle."""


class HierarchyFormatError(ValueError):
    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class Hierarchy:
    """Immutable DAG over string tags.

    Acyclicity is validated at construction time; duplicate edges collapse.
    Tags are kept in sorted order, which fixes the canonical indexing used by
    seeded operations such as :func:`rewire`.
    """

    __slots__ = ("tags", "edges", "children", "parents", "roots", "_topo")

    def __init__(self, tags: Iterable[str], edges: Iterable[tuple[str, str]]):
        tag_set = set(tags)
        edge_set = set()
        for parent, child in edges:
            if parent not in tag_set or child not in tag_set:
                raise ValueError(f"edge ({parent!r}, {child!r}) references an unknown tag")
            if parent == child:
                raise ValueError(f"self-loop on tag {parent!r}")
            edge_set.add((parent, child))
        self.tags: tuple[str, ...] = tuple(sorted(tag_set))
        self.edges: frozenset[tuple[str, str]] = frozenset(edge_set)
        children: dict[str, list[str]] = {t: [] for t in self.tags}
        parents: dict[str, list[str]] = {t: [] for t in self.tags}
        for parent, child in sorted(edge_set):
            children[parent].append(child)
            parents[child].append(parent)
        self.children: dict[str, tuple[str, ...]] = {t: tuple(c) for t, c in children.items()}
        self.parents: dict[str, tuple[str, ...]] = {t: tuple(p) for t, p in parents.items()}
        self.roots: tuple[str, ...] = tuple(t for t in self.tags if not self.parents[t])
        self._topo = self._topological_order()

    def _topological_order(self) -> tuple[str, ...]:
        indeg = {t: len(self.parents[t]) for t in self.tags}
        queue = deque(t for t in self.tags if indeg[t] == 0)
        order = []
        while queue:
            t = queue.popleft()
            order.append(t)
            for c in self.children[t]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        if len(order) != len(self.tags):
            cyclic = sorted(t for t, d in indeg.items() if d > 0)
            raise CycleError(f"hierarchy contains a directed cycle through {cyclic[:5]}")
        return tuple(order)

    @property
    def n_tags(self) -> int:
        return len(self.tags)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def is_forest(self) -> bool:
        return all(len(self.parents[t]) <= 1 for t in self.tags)

    def is_tree(self) -> bool:
        return len(self.roots) == 1 and self.is_forest()

    def depths(self) -> dict[str, int]:
        """Minimum edge distance from any root, per tag."""
        depth = {t: 0 for t in self.roots}
        queue = deque(self.roots)
        while queue:
            t = queue.popleft()
            for c in self.children[t]:
                if c not in depth or depth[t] + 1 < depth[c]:
                    depth[c] = depth[t] + 1
                    queue.append(c)
        return depth

    def undirected_neighbors(self) -> dict[str, tuple[str, ...]]:
        nbrs: dict[str, set[str]] = {t: set() for t in self.tags}
        for parent, child in self.edges:
            nbrs[parent].add(child)
            nbrs[child].add(parent)
        return {t: tuple(sorted(s)) for t, s in nbrs.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hierarchy):
            return NotImplemented
        return self.tags == other.tags and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.tags, self.edges))

    def __repr__(self) -> str:
        return f"Hierarchy(n_tags={self.n_tags}, n_edges={self.n_edges}, roots={len(self.roots)})"


def load_hierarchy(path: str) -> Hierarchy:
    tags: set[str] = set()
    edges: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) == 1:
                if not fields[0]:
                    raise HierarchyFormatError("empty tag", lineno)
                tags.add(fields[0])
            elif len(fields) == 2:
                parent, child = fields
                if not parent or not child:
                    raise HierarchyFormatError("empty tag in edge", lineno)
                tags.update((parent, child))
                edges.append((parent, child))
            else:
                raise HierarchyFormatError(f"expected 1 or 2 fields, got {len(fields)}", lineno)
    return Hierarchy(tags, edges)


def hierarchy_to_text(h: Hierarchy) -> str:
    lines = [f"{p}\t{c}" for p, c in sorted(h.edges)]
    linked = {t for e in h.edges for t in e}
    lines.extend(t for t in h.tags if t not in linked)
    return "\n".join(lines) + ("\n" if lines else "")


def save_hierarchy(h: Hierarchy, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(hierarchy_to_text(h))


def descendant_table(h: Hierarchy) -> dict[str, frozenset[str]]:
    """All descendants (children, grandchildren, ...) per tag, excluding the tag."""
    table: dict[str, frozenset[str]] = {}
    for t in reversed(h._topo):
        acc: set[str] = set()
        for c in h.children[t]:
            acc.add(c)
            acc |= table[c]
        table[t] = frozenset(acc)
    return table


def binary_tree(levels: int) -> Hierarchy:
    """Balanced binary tree with 2**levels - 1 tags named "1".."2**levels-1"."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    n = 2**levels - 1
    tags = [str(i) for i in range(1, n + 1)]
    edges = []
    for i in range(1, n + 1):
        for c in (2 * i, 2 * i + 1):
            if c <= n:
                edges.append((str(i), str(c)))
    return Hierarchy(tags, edges)


REWIRING_ORDERS = ("leaf-first", "random", "top-first")


def rewire(h: Hierarchy, fraction: float, order: str, rng: random.Random) -> Hierarchy:
    """Rewire round(fraction * n_edges) links of a tree, half-up rounding.

    A rewired link keeps its child; the new parent is drawn uniformly from the
    tags that are neither the child nor inside the child's current subtree, so
    the result stays a single-parent acyclic tree. Link order "leaf-first"
    processes deepest children first, "top-first" shallowest first (depths
    frozen from the input tree, ties by tag), "random" shuffles with `rng`.
    """
    if not h.is_tree():
        raise ValueError("rewire requires a single-rooted tree")
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must be in [0, 1], got {fraction}")
    if order not in REWIRING_ORDERS:
        raise ValueError(f"unknown rewiring order {order!r}, expected one of {REWIRING_ORDERS}")
    parent = {c: p for p, c in h.edges}
    n_rewire = int(fraction * len(parent) + 0.5)
    depth = h.depths()
    non_roots = [t for t in h.tags if t in parent]
    if order == "random":
        seq = list(non_roots)
        rng.shuffle(seq)
    elif order == "leaf-first":
        seq = sorted(non_roots, key=lambda t: (-depth[t], t))
    else:
        seq = sorted(non_roots, key=lambda t: (depth[t], t))
    children: dict[str, set[str]] = {t: set(h.children[t]) for t in h.tags}
    tags = h.tags
    for child in seq[:n_rewire]:
        # subtree below the child, at the moment of rewiring
        blocked = {child}
        stack = [child]
        while stack:
            u = stack.pop()
            for v in children[u]:
                if v not in blocked:
                    blocked.add(v)
                    stack.append(v)
        while True:
            candidate = tags[rng.randrange(len(tags))]
            if candidate not in blocked:
                break
        children[parent[child]].discard(child)
        children[candidate].add(child)
        parent[child] = candidate
    return Hierarchy(h.tags, [(p, c) for c, p in parent.items()])
