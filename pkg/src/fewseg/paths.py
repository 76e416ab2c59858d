"""Path sets for the collinearity-constrained force layout.

A path set is an ordered list of vertex paths v_0..v_k (k >= 2 edges).
Paths must be edge-disjoint, every vertex may be internal to at most one
path, and a path whose endpoint is internal to another path must come
after it (the constraint projection is applied in list order, so a later
path can drag a vertex off an earlier path's segment).
"""

from __future__ import annotations

from .geometry import angle_between, sub
from .model import Drawing, FewsegError, Graph

PathSet = list[list[int]]


class PathSetError(FewsegError):
    """Invalid path set; message carries the failing rule."""


def validate_path_set(graph: Graph, paths: PathSet) -> PathSet:
    """Check all path-set rules; return the paths, reordered if only the
    ordering rule was violated. Raises PathSetError otherwise."""
    edge_set = set(graph.edges)
    used_edges: set[tuple[int, int]] = set()
    internal_owner: dict[int, int] = {}
    for idx, path in enumerate(paths):
        if len(path) < 3:
            raise PathSetError(f"path {idx}: too short, needs at least 2 edges")
        if len(set(path)) != len(path):
            raise PathSetError(f"path {idx}: repeated vertex")
        for a, b in zip(path, path[1:]):
            key = (min(a, b), max(a, b))
            if key not in edge_set:
                raise PathSetError(f"path {idx}: not a path in graph (missing edge {a}-{b})")
            if key in used_edges:
                raise PathSetError(f"paths are not edge-disjoint (edge {a}-{b} reused)")
            used_edges.add(key)
        for v in path[1:-1]:
            if v in internal_owner:
                raise PathSetError(
                    f"internal-vertex conflict: vertex {v} internal to paths "
                    f"{internal_owner[v]} and {idx}"
                )
            internal_owner[v] = idx

    # Ordering rule: if v is internal to P_i and an endpoint of P_j, then
    # P_i must come first. Repair by a stable topological sort.
    after: dict[int, set[int]] = {i: set() for i in range(len(paths))}
    for j, path in enumerate(paths):
        for v in (path[0], path[-1]):
            i = internal_owner.get(v)
            if i is not None and i != j:
                after[i].add(j)
    order = _stable_topo(len(paths), after)
    if order is None:
        raise PathSetError("ordering conflict: paths cannot be ordered consistently")
    return [paths[i] for i in order]


def _stable_topo(n: int, after: dict[int, set[int]]) -> list[int] | None:
    indeg = [0] * n
    for i in range(n):
        for j in after[i]:
            indeg[j] += 1
    order: list[int] = []
    ready = sorted(i for i in range(n) if indeg[i] == 0)
    while ready:
        i = ready.pop(0)
        order.append(i)
        changed = False
        for j in sorted(after[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
                changed = True
        if changed:
            ready.sort()
    return order if len(order) == n else None


def select_paths(
    graph: Graph,
    base: Drawing,
    max_turn: float = 45.0,
    min_len: int = 2,
) -> PathSet:
    """Greedy path selection mirroring manual practice: walk chains of
    degree-2 vertices that are already nearly straight in the base drawing.

    A chain extends through a degree-2 vertex only while the turn between
    consecutive edges stays within max_turn degrees; chains shorter than
    min_len edges (and shorter than 2 edges regardless) are dropped.
    Internal vertices have degree 2 and endpoints do not, so the path-set
    invariants hold by construction; the result is validated anyway.
    """
    min_len = max(min_len, 2)
    deg = graph.degrees()
    adj = graph.adjacency()
    pos = base.positions
    unused = set(graph.edges)
    paths: PathSet = []
    # Two paths sharing both endpoints would pin their internal vertices to
    # identical interpolation points, collapsing the drawing; keep one.
    used_endpoints: set[frozenset[int]] = set()

    def walk(start: int, nxt: int) -> list[int]:
        path = [start, nxt]
        unused.discard((min(start, nxt), max(start, nxt)))
        while deg[path[-1]] == 2:
            w = path[-1]
            prev = path[-2]
            cont = [u for u in adj[w] if u != prev]
            if not cont:
                break
            x = cont[0]
            key = (min(w, x), max(w, x))
            if key not in unused or x in path:
                break
            turn = angle_between(sub(pos[w], pos[prev]), sub(pos[x], pos[w]))
            if turn > max_turn:
                break
            unused.discard(key)
            path.append(x)
        return path

    def keep(path: list[int]) -> None:
        ends = frozenset((path[0], path[-1]))
        if len(path) - 1 >= min_len and ends not in used_endpoints:
            used_endpoints.add(ends)
            paths.append(path)

    anchors = sorted(v for v in range(1, graph.n + 1) if deg[v] != 2)
    for a in anchors:
        for b in adj[a]:
            if (min(a, b), max(a, b)) in unused:
                keep(walk(a, b))
    # Components made entirely of degree-2 vertices (cycles).
    for v in sorted(range(1, graph.n + 1)):
        if deg[v] == 2:
            for b in adj[v]:
                if (min(v, b), max(v, b)) in unused:
                    keep(walk(v, b))
    return validate_path_set(graph, paths)
