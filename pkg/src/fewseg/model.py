"""Core graph/tree/drawing types shared by every layout and metric module.

Vertices are labelled 1..n throughout. Trees are rooted and stored as a
child -> parent map; graphs are simple and undirected. A Drawing binds a
structure to one position per vertex (exact integers for the grid tree
layouts, floats for the force layouts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class FewsegError(Exception):
    """Base class for package errors."""


class InputError(FewsegError):
    """Malformed input data or file (parse-level failure)."""


class AlgorithmError(FewsegError):
    """Algorithmic failure such as an exhausted rejection cap."""


@dataclass(frozen=True)
class RootedTree:
    """Labelled rooted tree on vertices 1..n.

    parent maps every non-root vertex to its parent; the root is absent
    from the map. Invariants (exactly one root, acyclic, spanning) are
    checked on construction.
    """

    n: int
    root: int
    parent: dict[int, int] = field(compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError("tree needs n >= 1")
        if not (1 <= self.root <= self.n):
            raise InputError(f"root {self.root} out of range 1..{self.n}")
        if self.root in self.parent:
            raise InputError("root must not have a parent")
        if len(self.parent) != self.n - 1:
            raise InputError("parent map must cover exactly the n-1 non-root vertices")
        for c, p in self.parent.items():
            if not (1 <= c <= self.n) or not (1 <= p <= self.n):
                raise InputError(f"edge ({p},{c}) out of range 1..{self.n}")
        # Acyclicity + spanning: every vertex must reach the root.
        for v in range(1, self.n + 1):
            seen = set()
            while v != self.root:
                if v in seen or v not in self.parent:
                    raise InputError("parent map contains a cycle or a second root")
                seen.add(v)
                v = self.parent[v]

    def children(self) -> dict[int, list[int]]:
        """Child lists keyed by vertex, each sorted by label."""
        ch: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for c, p in self.parent.items():
            ch[p].append(c)
        for lst in ch.values():
            lst.sort()
        return ch

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (parent, child), ordered by child label."""
        return [(self.parent[c], c) for c in sorted(self.parent)]

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in range(1, self.n + 1)}
        for c, p in self.parent.items():
            deg[c] += 1
            deg[p] += 1
        return deg

    def depths(self) -> dict[int, int]:
        """Depth in edges from the root."""
        d = {self.root: 0}
        for v in range(1, self.n + 1):
            trail = []
            u = v
            while u not in d:
                trail.append(u)
                u = self.parent[u]
            base = d[u]
            for w in reversed(trail):
                base += 1
                d[w] = base
        return d

    def depth(self) -> int:
        """Length of the longest root-leaf path, in edges."""
        return max(self.depths().values())

    def as_graph(self) -> "Graph":
        return Graph(self.n, frozenset(_norm(e) for e in self.edges()))


def _norm(e: tuple[int, int]) -> tuple[int, int]:
    u, v = e
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError("graph needs n >= 1")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n) or not (1 <= v <= self.n):
                raise InputError(f"edge ({u},{v}) out of range 1..{self.n}")
            key = _norm((u, v))
            if key in norm:
                raise InputError(f"duplicate edge ({u},{v})")
            norm.add(key)
        object.__setattr__(self, "edges", frozenset(norm))

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        return Graph(n, frozenset(_norm(tuple(e)) for e in edges))

    def edge_list(self) -> list[tuple[int, int]]:
        """Canonical edge order: sorted (u, v) with u < v."""
        return sorted(self.edges)

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in range(1, self.n + 1)}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj.values():
            lst.sort()
        return adj

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        adj = self.adjacency()
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


Coord = tuple[float, float]


@dataclass
class Drawing:
    """Positions for every vertex of a Graph or RootedTree.

    Tree layouts produce exact integer coordinates; force layouts floats.
    Every vertex has exactly one position and no two coincide.
    """

    graph: Graph | RootedTree
    positions: dict[int, Coord]

    def __post_init__(self) -> None:
        n = self.graph.n
        if set(self.positions) != set(range(1, n + 1)):
            raise InputError("positions must cover exactly the vertices 1..n")
        for v, (x, y) in self.positions.items():
            if not (math.isfinite(x) and math.isfinite(y)):
                raise InputError(f"non-finite coordinate at vertex {v}")
        if len({tuple(p) for p in self.positions.values()}) != n:
            raise InputError("two vertices share a position")

    def edge_list(self) -> list[tuple[int, int]]:
        if isinstance(self.graph, RootedTree):
            return [_norm(e) for e in self.graph.edges()]
        return self.graph.edge_list()

    def is_integral(self) -> bool:
        return all(
            isinstance(x, int) and isinstance(y, int)
            for x, y in self.positions.values()
        )

    def bounding_box(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax)."""
        xs = [p[0] for p in self.positions.values()]
        ys = [p[1] for p in self.positions.values()]
        return min(xs), min(ys), max(xs), max(ys)

    def size(self) -> tuple[float, float]:
        """(width, height) of the bounding box."""
        x0, y0, x1, y1 = self.bounding_box()
        return x1 - x0, y1 - y0
