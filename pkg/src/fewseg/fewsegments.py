"""Segment-optimal tree layout with area-reduction heuristics.

The drawing is organised around a heavy path decomposition. Each heavy
path is drawn on one straight line; a light child subtree continues its
parent edge's direction, so the parent edge and the child's heavy path
share a segment. Light children of a vertex are placed in pairs on a
common line through the vertex (top-right and bottom-left), which lets
two light edges share one segment as well. With one extra pairing at the
root (a light subtree drawn opposite the root's heavy edge whenever the
root has an odd number of light children), exactly one segment endpoint
lands on every odd-degree vertex, so the drawing realises the n_odd/2
optimum.

Geometry is built per heavy path in a canonical frame (path along +x)
and embedded through unimodular integer shears, which preserve
integrality, collinearity and planarity exactly. Vector rounding
(heuristic 1) runs while vectors are assigned; vector compression
(heuristic 2) and re-vectoring (heuristic 3) run afterwards in
alternating rounds, each accepting a change only if the drawing stays
planar and its bounding box does not grow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexity import count_segments, is_planar_drawing, odd_degree_bound
from .decomposition import HeavyPathDecomposition, heavy_path_decomposition
from .geometry import (
    cross,
    mat_compose,
    mat_inv_unimodular,
    mat_mul,
    primitive_vector,
    shear_for,
    vector_multiple,
)
from .model import AlgorithmError, Drawing, RootedTree

Vec = tuple[int, int]


@dataclass(frozen=True)
class FewSegParams:
    """s: stretch budget for vector rounding; heuristic_rounds: number of
    alternating compress/re-vector rounds applied after layout."""

    s: int = 2
    heuristic_rounds: int = 5

    def __post_init__(self) -> None:
        if self.s < 0 or self.heuristic_rounds < 0:
            raise ValueError("FewSegParams fields must be non-negative")


@dataclass(frozen=True)
class PassStats:
    label: str
    width: int
    height: int
    segments: int


# ---------------------------------------------------------------------------
# Vector rounding (heuristic 1)
# ---------------------------------------------------------------------------


def stretch_candidate(vec: Vec, i: int, j: int) -> Vec:
    """Apply the stretch (i, j) to an assigned vector: (x, y) -> (x+i, y+j)."""
    return (vec[0] + i, vec[1] + j)


def heuristic1_round_vector(
    pts_s: list[Vec],
    pts_s2: list[Vec] | None,
    vec: Vec,
    s: int,
    blocked: tuple[Vec, ...] = (),
) -> tuple[Vec, Vec | None]:
    """Stretch an assigned vector so it becomes a multiple of a smaller
    primitive when that shrinks the subtree footprint.

    Searches 0 <= i <= s*x, 0 <= j <= s*y under the slope guard
    (y+j)/(x+i) <= y/x, scoring each candidate with
    c(i,j) = i + j + max(w+h of S, w+h of S'), where the box of a subtree
    is its canonical point set sheared onto the candidate's primitive
    direction. Returns the optimised vector for S and its negative for S'
    (None when S' is absent). Candidates parallel to a blocked direction
    are skipped; (0, 0) is always admissible so the search cannot fail.
    """
    x, y = vec
    if x <= 0 or y <= 0:
        raise ValueError("heuristic 1 expects a normalised vector with x, y > 0")
    if s == 0:
        return vec, (-x, -y) if pts_s2 is not None else None
    dims_cache: dict[tuple[Vec, int], tuple[int, int]] = {}

    def dims(prim: Vec, pts: list[Vec], side: int) -> tuple[int, int]:
        key = (prim, side)
        if key not in dims_cache:
            m = shear_for(prim)
            xs = [m[0] * px + m[2] * py for px, py in pts]
            ys = [m[1] * px + m[3] * py for px, py in pts]
            dims_cache[key] = (max(xs) - min(xs), max(ys) - min(ys))
        return dims_cache[key]

    best_key = None
    best_ij = (0, 0)
    for i in range(0, s * x + 1):
        for j in range(0, s * y + 1):
            if (y + j) * x > y * (x + i):
                continue  # slope may not increase
            cand = (x + i, y + j)
            if any(cross(cand, b) == 0 for b in blocked):
                continue
            prim = primitive_vector(cand)
            w, h = dims(prim, pts_s, 0)
            size = w + h
            if pts_s2 is not None:
                w2, h2 = dims((-prim[0], -prim[1]), pts_s2, 1)
                size = max(size, w2 + h2)
            key = (i + j + size, i + j, i, j)
            if best_key is None or key < best_key:
                best_key = key
                best_ij = (i, j)
        # dims() caches by primitive so the double loop stays cheap
    out = stretch_candidate(vec, *best_ij)
    return out, (-out[0], -out[1]) if pts_s2 is not None else None


# ---------------------------------------------------------------------------
# Canonical geometry
# ---------------------------------------------------------------------------


@dataclass
class _Link:
    """A light edge and the subtree hanging from it, in the parent frame."""

    child: "_PathGeom"
    vec: Vec  # full edge vector, parent frame
    M: tuple[int, int, int, int]  # child frame -> parent frame
    partner: "_Link | None" = None
    root_opposite: bool = False


@dataclass
class _PathGeom:
    """One heavy path with its hanging light subtrees, path along +x."""

    vertices: list[int]
    station_x: list[int]
    links: list[tuple[int, _Link]] = field(default_factory=list)
    # Set during folds: global anchor and transform of this frame.
    base: Vec = (0, 0)
    A: tuple[int, int, int, int] = (1, 0, 0, 1)


@dataclass
class FewSegLayout:
    """A drawing plus the per-edge vector metadata the heuristics need."""

    tree: RootedTree
    params: FewSegParams
    root_geom: _PathGeom
    decomp: HeavyPathDecomposition

    def positions(self) -> dict[int, Vec]:
        return _fold(self.root_geom)

    def drawing(self) -> Drawing:
        return Drawing(self.tree, self.positions())

    def edge_vector(self, child_vertex: int) -> Vec:
        """Assigned vector of the edge above child_vertex, global frame."""
        _fold(self.root_geom)
        kind, pg, t, link = _handles(self.root_geom)[child_vertex]
        if kind == "heavy":
            gap = pg.station_x[t + 1] - pg.station_x[t]
            return mat_mul(pg.A, (gap, 0))
        return mat_mul(pg.A, link.vec)


def _fold(root_geom: _PathGeom) -> dict[int, Vec]:
    """Global positions; also refreshes each frame's base/transform."""
    out: dict[int, Vec] = {}
    stack: list[tuple[_PathGeom, Vec, tuple[int, int, int, int]]] = [
        (root_geom, (0, 0), (1, 0, 0, 1))
    ]
    while stack:
        pg, base, A = stack.pop()
        pg.base, pg.A = base, A
        for idx, v in enumerate(pg.vertices):
            off = mat_mul(A, (pg.station_x[idx], 0))
            out[v] = (base[0] + off[0], base[1] + off[1])
        for idx, link in pg.links:
            anchor = out[pg.vertices[idx]]
            off = mat_mul(A, link.vec)
            stack.append(
                (link.child, (anchor[0] + off[0], anchor[1] + off[1]), mat_compose(A, link.M))
            )
    return out


def _handles(root_geom: _PathGeom) -> dict[int, tuple]:
    """Map child vertex -> ('heavy', pg, t, None) | ('light', pg, t, link)."""
    out: dict[int, tuple] = {}
    stack = [root_geom]
    while stack:
        pg = stack.pop()
        for t in range(len(pg.vertices) - 1):
            out[pg.vertices[t + 1]] = ("heavy", pg, t, None)
        for idx, link in pg.links:
            out[link.child.vertices[0]] = ("light", pg, idx, link)
            stack.append(link.child)
    return out


def _flat_points(pg: _PathGeom) -> list[Vec]:
    """All vertex positions of the subtree in pg's own frame."""
    pts: list[Vec] = []
    stack: list[tuple[_PathGeom, Vec, tuple[int, int, int, int]]] = [
        (pg, (0, 0), (1, 0, 0, 1))
    ]
    while stack:
        g, base, A = stack.pop()
        for idx in range(len(g.vertices)):
            off = mat_mul(A, (g.station_x[idx], 0))
            pts.append((base[0] + off[0], base[1] + off[1]))
        for idx, link in g.links:
            anchor_off = mat_mul(A, (g.station_x[idx], 0))
            voff = mat_mul(A, link.vec)
            nb = (base[0] + anchor_off[0] + voff[0], base[1] + anchor_off[1] + voff[1])
            stack.append((link.child, nb, mat_compose(A, link.M)))
    return pts


def _linf(pts: list[Vec]) -> int:
    return max(max(abs(x), abs(y)) for x, y in pts)


def _build_path_geom(
    head: int,
    tree: RootedTree,
    decomp: HeavyPathDecomposition,
    children: dict[int, list[int]],
    params: FewSegParams,
    scale: int,
) -> _PathGeom:
    path = [head]
    while decomp.heavy_child[path[-1]] is not None:
        path.append(decomp.heavy_child[path[-1]])
    pg = _PathGeom(vertices=path, station_x=[0] * len(path))

    size = decomp.subtree_size
    station_radius: list[int] = []
    opposite: tuple[_PathGeom, int] | None = None  # (geom, content radius)

    for t, v in enumerate(path):
        lights = [c for c in children[v] if c != decomp.heavy_child[v]]
        lights.sort(key=lambda c: (size[c], c))
        if v == tree.root and len(lights) % 2 == 1:
            # Root parity fix: the largest light subtree extends the root's
            # heavy path line in the opposite direction.
            opp = lights.pop()
            geom = _build_path_geom(opp, tree, decomp, children, params, scale)
            opposite = (geom, _linf(_flat_points(geom)))

        slots: list[tuple[int, int | None]] = [
            (lights[k], lights[k + 1]) for k in range(0, len(lights) - 1, 2)
        ]
        if len(lights) % 2 == 1:
            slots.append((lights[-1], None))

        built: list[tuple[_PathGeom, list[Vec], _PathGeom | None, list[Vec] | None]] = []
        for first, second in slots:
            g1 = _build_path_geom(first, tree, decomp, children, params, scale)
            p1 = _flat_points(g1)
            if second is None:
                built.append((g1, p1, None, None))
            else:
                g2 = _build_path_geom(second, tree, decomp, children, params, scale)
                built.append((g1, p1, g2, _flat_points(g2)))

        nslots = len(slots)
        base_dirs = [(k, nslots + 1 - k) for k in range(1, nslots + 1)]
        final_dirs: list[Vec] = []
        for k, (g1, p1, g2, p2) in enumerate(built):
            blocked = tuple(final_dirs) + tuple(base_dirs[k + 1 :])
            d, _ = heuristic1_round_vector(p1, p2, base_dirs[k], params.s, blocked)
            final_dirs.append(d)

        # One scale per station makes every slot's box clear every other
        # slot's line: primitive integer directions differ by |cross| >= 1.
        shears = [shear_for(primitive_vector(d)) for d in final_dirs]
        rhos: list[int] = []
        for k, (g1, p1, g2, p2) in enumerate(built):
            m1 = shears[k]
            rhos.append(_linf([mat_mul(m1, p) for p in p1]))
            if p2 is not None:
                prim = primitive_vector(final_dirs[k])
                m2 = shear_for((-prim[0], -prim[1]))
                rhos.append(_linf([mat_mul(m2, p) for p in p2]))
        maxnorm = max([1] + [abs(d[0]) + abs(d[1]) for d in final_dirs])
        maxrho = max([0] + rhos)
        mt = 3 * scale * maxnorm * (maxrho + 1)

        radius = 0
        for k, (g1, p1, g2, p2) in enumerate(built):
            d = final_dirs[k]
            prim = primitive_vector(d)
            vec1 = (mt * d[0], mt * d[1])
            link1 = _Link(child=g1, vec=vec1, M=shear_for(prim))
            pg.links.append((t, link1))
            r1 = _linf([mat_mul(link1.M, p) for p in p1])
            radius = max(radius, max(abs(vec1[0]), abs(vec1[1])) + r1)
            if g2 is not None:
                nprim = (-prim[0], -prim[1])
                link2 = _Link(
                    child=g2, vec=(-vec1[0], -vec1[1]), M=shear_for(nprim), partner=link1
                )
                link1.partner = link2
                pg.links.append((t, link2))
                r2 = _linf([mat_mul(link2.M, p) for p in p2])
                radius = max(radius, max(abs(vec1[0]), abs(vec1[1])) + r2)
        station_radius.append(radius + 1)

    for t in range(1, len(path)):
        gap = station_radius[t - 1] + station_radius[t] + scale
        pg.station_x[t] = pg.station_x[t - 1] + gap

    if opposite is not None:
        geom, rho = opposite
        g_off = station_radius[0] + rho + scale
        link = _Link(
            child=geom, vec=(-g_off, 0), M=shear_for((-1, 0)), root_opposite=True
        )
        pg.links.append((0, link))
    return pg


# ---------------------------------------------------------------------------
# Planarity checking (exact, vectorized; positions change, edges do not)
# ---------------------------------------------------------------------------


class _PlanarChecker:
    def __init__(self, tree: RootedTree):
        edges = [(min(p, c), max(p, c)) for p, c in tree.edges()]
        edges.sort()
        self.n = tree.n
        self.eu = np.array([u - 1 for u, _ in edges], dtype=np.int64)
        self.ev = np.array([v - 1 for _, v in edges], dtype=np.int64)
        m = len(edges)
        ii, jj = np.triu_indices(m, k=1)
        ea = np.array(edges, dtype=np.int64)
        share = (
            (ea[ii, 0] == ea[jj, 0])
            | (ea[ii, 0] == ea[jj, 1])
            | (ea[ii, 1] == ea[jj, 0])
            | (ea[ii, 1] == ea[jj, 1])
        )
        self.pi = ii[~share]
        self.pj = jj[~share]
        vid = np.arange(1, self.n + 1, dtype=np.int64)
        self.noninc = (vid[:, None] != ea[None, :, 0]) & (vid[:, None] != ea[None, :, 1])

    def to_array(self, pos: dict[int, Vec]) -> np.ndarray:
        from .complexity import _int_dtype

        return np.array([pos[v] for v in range(1, self.n + 1)], dtype=_int_dtype(pos))

    def is_planar(self, arr: np.ndarray) -> bool:
        # Distinct positions.
        order = np.lexsort((arr[:, 1], arr[:, 0]))
        srt = arr[order]
        if len(srt) > 1 and bool((np.diff(srt, axis=0) == 0).all(axis=1).any()):
            return False
        a = arr[self.eu]
        b = arr[self.ev]
        if len(self.pi):
            aa, bb = a[self.pi], b[self.pi]
            cc, dd = a[self.pj], b[self.pj]

            def orient(p0, p1, p2):
                s = (p1[:, 0] - p0[:, 0]) * (p2[:, 1] - p0[:, 1]) - (
                    p1[:, 1] - p0[:, 1]
                ) * (p2[:, 0] - p0[:, 0])
                return (s > 0).astype(np.int8) - (s < 0).astype(np.int8)

            o1 = orient(aa, bb, cc)
            o2 = orient(aa, bb, dd)
            o3 = orient(cc, dd, aa)
            o4 = orient(cc, dd, bb)
            if bool(((o1 != o2) & (o3 != o4)).any()):
                return False

            def within(q, p0, p1):
                return (
                    (np.minimum(p0[:, 0], p1[:, 0]) <= q[:, 0])
                    & (q[:, 0] <= np.maximum(p0[:, 0], p1[:, 0]))
                    & (np.minimum(p0[:, 1], p1[:, 1]) <= q[:, 1])
                    & (q[:, 1] <= np.maximum(p0[:, 1], p1[:, 1]))
                )

            touch = (
                ((o1 == 0) & within(cc, aa, bb))
                | ((o2 == 0) & within(dd, aa, bb))
                | ((o3 == 0) & within(aa, cc, dd))
                | ((o4 == 0) & within(bb, cc, dd))
            )
            if bool(touch.any()):
                return False
        # No vertex in the open interior of a non-incident edge.
        ab = b - a
        apx = arr[:, None, 0] - a[None, :, 0]
        apy = arr[:, None, 1] - a[None, :, 1]
        crossv = ab[None, :, 0] * apy - ab[None, :, 1] * apx
        dotv = apx * ab[None, :, 0] + apy * ab[None, :, 1]
        ab2 = (ab[:, 0] ** 2 + ab[:, 1] ** 2)[None, :]
        bad = (crossv == 0) & (dotv > 0) & (dotv < ab2) & self.noninc
        return not bool(bad.any())


def _dims(arr: np.ndarray) -> tuple[int, int]:
    mn = arr.min(axis=0)
    mx = arr.max(axis=0)
    return int(mx[0] - mn[0]), int(mx[1] - mn[1])


# ---------------------------------------------------------------------------
# Heuristic 2: vector compression
# ---------------------------------------------------------------------------


def heuristic2_compress(layout: FewSegLayout, checker: _PlanarChecker | None = None) -> FewSegLayout:
    """Replace each edge's vector k*u (u primitive) by the smallest m*u
    that keeps the drawing planar and does not grow the bounding box.

    Edges are visited in a post-order traversal of the tree; the subtree
    below an edge translates rigidly, everything else stays put. Segment
    structure is untouched because directions never change.
    """
    checker = checker or _PlanarChecker(layout.tree)
    handles = _handles(layout.root_geom)
    arr = checker.to_array(layout.positions())
    width, height = _dims(arr)
    for v in _postorder(layout.tree):
        if v == layout.tree.root:
            continue
        kind, pg, t, link = handles[v]
        if kind == "heavy":
            gap = pg.station_x[t + 1] - pg.station_x[t]
            if gap <= 1:
                continue
            saved = list(pg.station_x)
            for m in range(1, gap):
                delta = m - gap
                for tt in range(t + 1, len(pg.station_x)):
                    pg.station_x[tt] = saved[tt] + delta
                if _accept(layout, checker, width, height):
                    width, height = _dims(checker.to_array(layout.positions()))
                    break
            else:
                pg.station_x = saved
        else:
            prim = primitive_vector(link.vec)
            g = vector_multiple(link.vec)
            if g <= 1:
                continue
            saved_vec = link.vec
            for m in range(1, g):
                link.vec = (m * prim[0], m * prim[1])
                if _accept(layout, checker, width, height):
                    width, height = _dims(checker.to_array(layout.positions()))
                    break
            else:
                link.vec = saved_vec
    return layout


def _accept(layout: FewSegLayout, checker: _PlanarChecker, width: int, height: int) -> bool:
    arr = checker.to_array(layout.positions())
    w, h = _dims(arr)
    if w > width or h > height:
        return False
    return checker.is_planar(arr)


def _postorder(tree: RootedTree) -> list[int]:
    children = tree.children()
    out: list[int] = []
    stack: list[tuple[int, bool]] = [(tree.root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            out.append(v)
            continue
        stack.append((v, True))
        for c in reversed(children[v]):
            stack.append((c, False))
    return out


# ---------------------------------------------------------------------------
# Heuristic 3: re-vectoring
# ---------------------------------------------------------------------------


def heuristic3_revector(layout: FewSegLayout, checker: _PlanarChecker | None = None) -> FewSegLayout:
    """Redraw overlong light edges with a shorter vector when possible.

    For each light edge (p, r) whose vector satisfies |x|+|y| > (w+h)/5,
    candidates (i, j) with 0 < |i|+|j| < |x|+|y| are tried in order of
    rising |i|+|j|; the subtree is re-embedded with (i, j) assigned to its
    heavy path, the pair partner (if any) with (-i, -j), and the first
    candidate keeping the drawing planar with no larger width or height
    wins. The segment structure is preserved because partners stay on one
    line through p. The root-opposite subtree is skipped: its direction is
    locked to the root's heavy path line.
    """
    checker = checker or _PlanarChecker(layout.tree)
    handles = _handles(layout.root_geom)
    for v in _postorder(layout.tree):
        if v == layout.tree.root:
            continue
        kind, pg, t, link = handles[v]
        if kind != "light" or link.root_opposite:
            continue
        _fold(layout.root_geom)  # refresh frame transforms
        arr = checker.to_array(layout.positions())
        width, height = _dims(arr)
        gvec = mat_mul(pg.A, link.vec)
        budget = abs(gvec[0]) + abs(gvec[1])
        if 5 * budget <= width + height:
            continue
        Ainv = mat_inv_unimodular(pg.A)
        path_dir = mat_mul(pg.A, (1, 0))
        saved = (link.vec, link.M)
        saved_partner = (link.partner.vec, link.partner.M) if link.partner else None
        done = False
        for i, j in _candidates(budget):
            if cross((i, j), path_dir) == 0:
                continue  # would overlap the heavy path line at p
            prim = primitive_vector((i, j))
            link.vec = mat_mul(Ainv, (i, j))
            link.M = mat_compose(Ainv, shear_for(prim))
            if link.partner is not None:
                link.partner.vec = mat_mul(Ainv, (-i, -j))
                link.partner.M = mat_compose(Ainv, shear_for((-prim[0], -prim[1])))
            if _accept(layout, checker, width, height):
                done = True
                break
        if not done:
            link.vec, link.M = saved
            if link.partner is not None:
                link.partner.vec, link.partner.M = saved_partner
    return layout


def _candidates(budget: int):
    """(i, j) with 0 < |i|+|j| < budget in rising |i|+|j|, then i, then +j."""
    for s in range(1, budget):
        for i in range(-s, s + 1):
            r = s - abs(i)
            if r == 0:
                yield (i, 0)
            else:
                yield (i, r)
                yield (i, -r)


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


def base_layout(tree: RootedTree, params: FewSegParams = FewSegParams()) -> FewSegLayout:
    """Heavy-path placement with vector rounding, verified planar and
    segment-optimal; the safety scale doubles on the (never yet observed)
    chance a clearance bound is hit exactly."""
    decomp = heavy_path_decomposition(tree)
    children = tree.children()
    bound = odd_degree_bound(tree)
    last_err = None
    for scale in (1, 2, 4, 8, 16):
        geom = _build_path_geom(tree.root, tree, decomp, children, params, scale)
        layout = FewSegLayout(tree, params, geom, decomp)
        if tree.n == 1:
            return layout
        drawing = layout.drawing()
        if not is_planar_drawing(drawing):
            last_err = f"non-planar base layout at scale {scale}"
            continue
        segs, _ = count_segments(drawing)
        if segs != bound:
            last_err = f"segment count {segs} != bound {bound} at scale {scale}"
            continue
        return layout
    raise AlgorithmError(f"fewsegments base layout failed: {last_err}")


def layout_fewsegments_traced(
    tree: RootedTree, params: FewSegParams = FewSegParams()
) -> tuple[Drawing, list[PassStats]]:
    """Full pipeline, recording (width, height, segments) after the base
    layout and after every heuristic pass."""
    layout = base_layout(tree, params)
    trace = [_stats("base", layout)]
    if tree.n > 1:
        checker = _PlanarChecker(tree)
        for r in range(params.heuristic_rounds):
            heuristic2_compress(layout, checker)
            trace.append(_stats(f"h2:{r + 1}", layout))
            heuristic3_revector(layout, checker)
            trace.append(_stats(f"h3:{r + 1}", layout))
    return layout.drawing(), trace


def layout_fewsegments(tree: RootedTree, params: FewSegParams = FewSegParams()) -> Drawing:
    drawing, _ = layout_fewsegments_traced(tree, params)
    return drawing


def _stats(label: str, layout: FewSegLayout) -> PassStats:
    drawing = layout.drawing()
    w, h = drawing.size()
    segs, _ = count_segments(drawing)
    return PassStats(label, int(w), int(h), segs)
