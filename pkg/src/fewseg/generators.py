"""Stimulus generators: random trees by rejection on depth, random
connected sparse graphs, with two preset size classes.

Trees are drawn uniformly via random Prüfer sequences, rooted at label 1,
and accepted only when the depth (longest root-leaf path, in edges)
matches the class target, which preserves uniformity on the accepted set.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .model import AlgorithmError, Graph, InputError, RootedTree

# Depth targets per (size class, depth class): size 1 is 20 nodes, size 2 is 40.
SIZE_NODES = {1: 20, 2: 40}
DEPTH_TARGETS = {
    (1, "deep"): 8,
    (1, "balanced"): 5,
    (1, "wide"): 3,
    (2, "deep"): 14,
    (2, "balanced"): 9,
    (2, "wide"): 5,
}
EDGE_COUNTS = {1: 30, 2: 60}

DEFAULT_REJECTION_CAP = 1_000_000


@dataclass(frozen=True)
class TreeSpec:
    size_class: int
    depth_class: str
    seed: int

    def __post_init__(self) -> None:
        if self.size_class not in SIZE_NODES:
            raise InputError(f"size_class must be 1 or 2, got {self.size_class}")
        if (self.size_class, self.depth_class) not in DEPTH_TARGETS:
            raise InputError(f"unknown depth_class {self.depth_class!r}")

    @property
    def n(self) -> int:
        return SIZE_NODES[self.size_class]

    @property
    def target_depth(self) -> int:
        return DEPTH_TARGETS[(self.size_class, self.depth_class)]


@dataclass(frozen=True)
class GraphSpec:
    size_class: int
    type_class: str
    seed: int

    def __post_init__(self) -> None:
        if self.size_class not in SIZE_NODES:
            raise InputError(f"size_class must be 1 or 2, got {self.size_class}")
        if self.type_class not in ("rome", "random"):
            raise InputError(f"type_class must be 'rome' or 'random', got {self.type_class!r}")

    @property
    def n(self) -> int:
        return SIZE_NODES[self.size_class]

    @property
    def m(self) -> int:
        return EDGE_COUNTS[self.size_class]


def prufer_decode(sequence: list[int], n: int) -> list[tuple[int, int]]:
    """The unique labelled tree (as an edge list) for a Prüfer sequence.

    Standard decoding: repeatedly join the smallest remaining leaf to the
    next sequence entry. Bijective between sequences of length n-2 over
    1..n and labelled trees on n vertices.
    """
    if n < 2:
        raise InputError("prufer decoding needs n >= 2")
    if len(sequence) != n - 2:
        raise InputError(f"sequence length {len(sequence)} != n-2 = {n - 2}")
    for s in sequence:
        if not (1 <= s <= n):
            raise InputError(f"label {s} out of range 1..{n}")
    degree = [1] * (n + 1)
    for s in sequence:
        degree[s] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in sequence:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def root_tree(n: int, edges: list[tuple[int, int]], root: int = 1) -> RootedTree:
    """Orient an unrooted tree's edges away from the chosen root."""
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent: dict[int, int] = {}
    stack = [root]
    seen = {root}
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                stack.append(w)
    if len(seen) != n:
        raise InputError("edge list is not a spanning tree")
    return RootedTree(n, root, parent)


def random_tree(spec: TreeSpec, rejection_cap: int = DEFAULT_REJECTION_CAP) -> RootedTree:
    """Uniform random rooted tree of the spec's size with exact target depth."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    target = spec.target_depth
    for _ in range(rejection_cap):
        seq = rng.integers(1, n + 1, size=n - 2).tolist()
        edges = prufer_decode(seq, n)
        if _depth_from_root1(n, edges) == target:
            return root_tree(n, edges)
    raise AlgorithmError(
        f"depth unreachable: no tree of depth {target} on {n} nodes "
        f"within {rejection_cap} attempts"
    )


def _depth_from_root1(n: int, edges: list[tuple[int, int]]) -> int:
    """Depth of the tree rooted at label 1, cheap path for rejection."""
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    depth = 0
    seen = bytearray(n + 1)
    seen[1] = 1
    frontier = [1]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = 1
                    nxt.append(w)
        if nxt:
            depth += 1
        frontier = nxt
    return depth


def random_sparse_graph(
    spec: GraphSpec, rejection_cap: int = DEFAULT_REJECTION_CAP
) -> Graph:
    """Connected graph with the spec's node/edge counts, edges uniform
    without replacement over all vertex pairs, accepted iff connected."""
    if spec.type_class != "random":
        raise InputError("random_sparse_graph handles type_class='random' only")
    return random_graph(spec.n, spec.m, spec.seed, rejection_cap)


def random_graph(n: int, m: int, seed: int, rejection_cap: int = DEFAULT_REJECTION_CAP) -> Graph:
    all_pairs = list(combinations(range(1, n + 1), 2))
    if m > len(all_pairs):
        raise InputError(f"cannot pick {m} distinct edges from {len(all_pairs)} pairs")
    rng = np.random.default_rng(seed)
    for _ in range(rejection_cap):
        idx = rng.choice(len(all_pairs), size=m, replace=False)
        g = Graph.from_edges(n, [all_pairs[i] for i in idx])
        if g.is_connected():
            return g
    raise AlgorithmError(
        f"no connected graph with n={n}, m={m} within {rejection_cap} attempts"
    )
