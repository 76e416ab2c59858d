"""Visual-complexity primitives: segment counting, crossings, planarity.

A segment is a maximal chain of pairwise-incident collinear edges; the
number of segments is the drawing's visual complexity. For any tree
drawing it is bounded below by half the number of odd-degree vertices,
and that bound is attainable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import EPS_COL, collinear_through, point_on_segment, segments_cross, sub
from .model import Drawing, RootedTree


@dataclass(frozen=True)
class Segment:
    """One maximal collinear chain: its primitive-ish direction anchor and
    the ordered edges it covers (consecutive edges share a vertex)."""

    anchor: tuple[float, float]
    direction: tuple[float, float]
    edges: tuple[tuple[int, int], ...]


def odd_degree_bound(tree: RootedTree) -> int:
    """n_odd / 2: the minimum segment count of any drawing of the tree."""
    if tree.n == 1:
        return 0
    n_odd = sum(1 for d in tree.degrees().values() if d % 2 == 1)
    return n_odd // 2


def count_segments(drawing: Drawing, eps: float | None = None) -> tuple[int, list[Segment]]:
    """Partition the drawn edges into maximal collinear incident chains.

    Integer drawings are chained exactly; real drawings use the relative
    tolerance eps (defaults to EPS_COL when coordinates are non-integral).
    At each vertex, edges are paired greedily in canonical edge order: an
    edge chains with the first unpaired collinear edge on the opposite side.
    """
    edges = drawing.edge_list()
    if not edges:
        return 0, []
    if eps is None and not drawing.is_integral():
        eps = EPS_COL
    pos = drawing.positions

    incident: dict[int, list[int]] = {}
    for idx, (u, v) in enumerate(edges):
        incident.setdefault(u, []).append(idx)
        incident.setdefault(v, []).append(idx)

    # link[idx] holds the chained neighbour edge at each endpoint of idx.
    link: dict[tuple[int, int], int] = {}
    for v in sorted(incident):
        ids = incident[v]
        for a_pos, i in enumerate(ids):
            if (i, v) in link:
                continue
            other_i = _other_end(edges[i], v)
            u_vec = sub(pos[other_i], pos[v])
            for j in ids[a_pos + 1 :]:
                if (j, v) in link:
                    continue
                other_j = _other_end(edges[j], v)
                v_vec = sub(pos[other_j], pos[v])
                if collinear_through(u_vec, v_vec, eps):
                    link[(i, v)] = j
                    link[(j, v)] = i
                    break

    seen = [False] * len(edges)
    segments: list[Segment] = []
    for start in range(len(edges)):
        if seen[start]:
            continue
        chain = _walk_chain(start, edges, link, seen)
        first_u, first_v = chain[0]
        segments.append(
            Segment(
                anchor=pos[first_u],
                direction=sub(pos[first_v], pos[first_u]),
                edges=tuple(chain),
            )
        )
    return len(segments), segments


def _other_end(edge: tuple[int, int], v: int) -> int:
    return edge[1] if edge[0] == v else edge[0]


def _walk_chain(start, edges, link, seen) -> list[tuple[int, int]]:
    """Collect the chain through `start`, oriented end to end."""
    u0, v0 = edges[start]
    # Walk from each endpoint outward, then splice.
    left = _walk_dir(start, u0, edges, link)
    right = _walk_dir(start, v0, edges, link)
    ordered_ids = left[::-1] + [start] + right
    for i in ordered_ids:
        seen[i] = True
    # Orient edges along the walk so consecutive edges share a vertex.
    chain: list[tuple[int, int]] = []
    # Find the free endpoint of the first edge (or break the cycle arbitrarily).
    first = ordered_ids[0]
    a, b = edges[first]
    if len(ordered_ids) > 1:
        shared = set(edges[first]) & set(edges[ordered_ids[1]])
        head = a if b in shared else b if a in shared else a
    else:
        head = a
    cur = head
    for i in ordered_ids:
        nxt = _other_end(edges[i], cur)
        chain.append((cur, nxt))
        cur = nxt
    return chain


def _walk_dir(start, endpoint, edges, link) -> list[int]:
    out = []
    cur, v = start, endpoint
    while (cur, v) in link:
        nxt = link[(cur, v)]
        if nxt == start:
            break  # closed cycle of collinear edges (degenerate)
        out.append(nxt)
        v = _other_end(edges[nxt], v)
        cur = nxt
    return out


@dataclass(frozen=True)
class CrossingReport:
    crossings: int
    degenerate_overlaps: int


def crossing_report(drawing: Drawing) -> CrossingReport:
    """Count unordered non-incident edge pairs meeting outside shared endpoints.

    Degenerate collinear overlaps of non-incident edges count as crossings
    and are reported separately so callers can flag them.
    """
    edges = drawing.edge_list()
    pos = drawing.positions
    m = len(edges)
    if m < 2:
        return CrossingReport(0, 0)
    if drawing.is_integral():
        return _crossing_report_int(edges, pos)
    crossings = overlaps = 0
    for i in range(m):
        a, b = edges[i]
        for j in range(i + 1, m):
            c, d = edges[j]
            if a in (c, d) or b in (c, d):
                continue
            if segments_cross(pos[a], pos[b], pos[c], pos[d]):
                crossings += 1
                if _is_overlap(pos[a], pos[b], pos[c], pos[d]):
                    overlaps += 1
    return CrossingReport(crossings, overlaps)


def _is_overlap(a, b, c, d) -> bool:
    from .geometry import cross

    return cross(sub(b, a), sub(d, c)) == 0 and cross(sub(b, a), sub(c, a)) == 0


def _int_dtype(pos) -> type:
    """int64 while products cannot overflow, exact Python ints otherwise."""
    maxc = max((max(abs(x), abs(y)) for x, y in pos.values()), default=0)
    return np.int64 if maxc < (1 << 25) else object


def _sign_arr(s):
    return (s > 0).astype(np.int8) - (s < 0).astype(np.int8)


def _crossing_report_int(edges, pos) -> CrossingReport:
    """Vectorized exact crossing count for integer drawings. int64 products
    are exact below the 2**25 coordinate bound; larger drawings switch to
    Python-int object arrays (slower, still exact)."""
    m = len(edges)
    dt = _int_dtype(pos)
    p = np.array([[pos[u], pos[v]] for u, v in edges], dtype=dt)  # (m,2,2)
    ii, jj = np.triu_indices(m, k=1)
    ev = np.array(edges, dtype=np.int64)
    share = (
        (ev[ii, 0] == ev[jj, 0])
        | (ev[ii, 0] == ev[jj, 1])
        | (ev[ii, 1] == ev[jj, 0])
        | (ev[ii, 1] == ev[jj, 1])
    )
    keep = ~share
    ii, jj = ii[keep], jj[keep]
    if len(ii) == 0:
        return CrossingReport(0, 0)
    a, b = p[ii, 0], p[ii, 1]
    c, d = p[jj, 0], p[jj, 1]

    def orient(p0, p1, p2):
        s = (p1[:, 0] - p0[:, 0]) * (p2[:, 1] - p0[:, 1]) - (p1[:, 1] - p0[:, 1]) * (
            p2[:, 0] - p0[:, 0]
        )
        return _sign_arr(s)

    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    proper = (o1 != o2) & (o3 != o4)

    def within(q, p0, p1):
        return (
            (np.minimum(p0[:, 0], p1[:, 0]) <= q[:, 0])
            & (q[:, 0] <= np.maximum(p0[:, 0], p1[:, 0]))
            & (np.minimum(p0[:, 1], p1[:, 1]) <= q[:, 1])
            & (q[:, 1] <= np.maximum(p0[:, 1], p1[:, 1]))
        )

    touch = (
        ((o1 == 0) & within(c, a, b))
        | ((o2 == 0) & within(d, a, b))
        | ((o3 == 0) & within(a, c, d))
        | ((o4 == 0) & within(b, c, d))
    )
    crossing = proper | touch
    parallel = (b[:, 0] - a[:, 0]) * (d[:, 1] - c[:, 1]) - (b[:, 1] - a[:, 1]) * (
        d[:, 0] - c[:, 0]
    ) == 0
    overlap = crossing & parallel & (o1 == 0)
    return CrossingReport(int(crossing.sum()), int(overlap.sum()))


def count_crossings(drawing: Drawing) -> int:
    return crossing_report(drawing).crossings


def is_planar_drawing(drawing: Drawing) -> bool:
    """True iff no crossings and no vertex inside the interior of another edge."""
    if count_crossings(drawing) != 0:
        return False
    edges = drawing.edge_list()
    pos = drawing.positions
    if drawing.is_integral() and edges:
        return not _any_vertex_on_edge_int(edges, pos)
    for u, v in edges:
        a, b = pos[u], pos[v]
        for w in drawing.positions:
            if w == u or w == v:
                continue
            if point_on_segment(pos[w], a, b):
                return False
    return True


def _any_vertex_on_edge_int(edges, pos) -> bool:
    verts = sorted(pos)
    dt = _int_dtype(pos)
    q = np.array([pos[w] for w in verts], dtype=dt)  # (n,2)
    vid = np.array(verts, dtype=np.int64)
    ev = np.array(edges, dtype=np.int64)  # (m,2)
    a = np.array([pos[u] for u, _ in edges], dtype=dt)
    b = np.array([pos[v] for _, v in edges], dtype=dt)
    ab = b - a  # (m,2)
    # Broadcast vertices against edges: (n,m)
    apx = q[:, None, 0] - a[None, :, 0]
    apy = q[:, None, 1] - a[None, :, 1]
    crossv = ab[None, :, 0] * apy - ab[None, :, 1] * apx
    dotv = apx * ab[None, :, 0] + apy * ab[None, :, 1]
    ab2 = (ab[:, 0] ** 2 + ab[:, 1] ** 2)[None, :]
    interior = (crossv == 0) & (dotv > 0) & (dotv < ab2)
    endpoint = (vid[:, None] == ev[None, :, 0]) | (vid[:, None] == ev[None, :, 1])
    return bool((interior & ~endpoint).any())
