"""Spring embedder and its collinearity-constrained extension.

Classic model: every vertex pair repels with k^2/d, every edge attracts
with d^2/k, where k = C * sqrt(A / n) is the optimal separation. Per
iteration the summed movement of each vertex is capped by a temperature
that cools linearly to zero. The constrained variant re-targets the
internal vertices of each input path so their post-move positions sit
evenly spaced on the segment between the path's post-move endpoints,
paths applied in list order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import AlgorithmError, Drawing, Graph, InputError
from .paths import PathSet, validate_path_set


@dataclass(frozen=True)
class ForceParams:
    """C and A define the optimal distance k = C*sqrt(A/n); A defaults to
    n, initial_temperature to 0.1*sqrt(A)."""

    C: float = 1.0
    A: float | None = None
    iterations: int = 500
    initial_temperature: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.C <= 0:
            raise InputError("C must be positive")
        if self.A is not None and self.A <= 0:
            raise InputError("A must be positive")
        if self.iterations < 1:
            raise InputError("iterations must be >= 1")
        if self.initial_temperature is not None and self.initial_temperature <= 0:
            raise InputError("initial_temperature must be positive")


def fr_attractive(d: float, k: float) -> float:
    """Attractive force magnitude d^2/k along an edge."""
    if d < 0 or k <= 0:
        raise ValueError("needs d >= 0 and k > 0")
    return d * d / k


def fr_repulsive(d: float, k: float, d_min: float | None = None) -> float:
    """Repulsive force -k^2/d between a vertex pair.

    d = 0 is clamped to d_min when one is supplied (coincident-vertex
    handling matches the layout loop), otherwise rejected.
    """
    if k <= 0:
        raise ValueError("needs k > 0")
    if d <= 0:
        if d_min is None:
            raise ValueError("repulsive force undefined at d = 0 without d_min")
        d = d_min
    elif d_min is not None:
        d = max(d, d_min)
    return -(k * k) / d


def optimal_distance(graph: Graph, params: ForceParams) -> float:
    a = params.A if params.A is not None else float(graph.n)
    return params.C * math.sqrt(a / graph.n)


def apply_path_constraints(
    positions: dict[int, tuple[float, float]],
    displacements: dict[int, tuple[float, float]],
    paths: PathSet,
) -> dict[int, tuple[float, float]]:
    """Overwrite internal-vertex displacements so each path's post-move
    internal vertices interpolate its post-move endpoints evenly.

    For path v_0..v_k and 0 < i < k:
    new position of v_i = ((k-i)/k) (v_0 + dv_0) + (i/k) (v_k + dv_k).
    Paths are applied in list order; a later path may move a vertex off an
    earlier path's segment, which is exactly why the ordering rule exists.
    """
    verts = sorted(positions)
    index = {v: i for i, v in enumerate(verts)}
    pos = np.array([positions[v] for v in verts], dtype=float)
    disp = np.array([displacements[v] for v in verts], dtype=float)
    _apply_constraints_arrays(pos, disp, _compile_paths(paths, index))
    return {v: (float(disp[i][0]), float(disp[i][1])) for v, i in index.items()}


def _compile_paths(paths: PathSet, index: dict[int, int]):
    compiled = []
    for path in paths:
        k = len(path) - 1
        ids = np.array([index[v] for v in path], dtype=int)
        frac = np.arange(1, k) / k
        compiled.append((ids[0], ids[-1], ids[1:-1], frac))
    return compiled


def _apply_constraints_arrays(pos, disp, compiled) -> None:
    for v0, vk, internal, frac in compiled:
        a = pos[v0] + disp[v0]
        b = pos[vk] + disp[vk]
        target = (1 - frac)[:, None] * a[None, :] + frac[:, None] * b[None, :]
        disp[internal] = target - pos[internal]


def layout_force_directed(graph: Graph, params: ForceParams = ForceParams()) -> Drawing:
    return _run(graph, params, [])


def layout_fdfewseg(
    graph: Graph, paths: PathSet, params: ForceParams = ForceParams()
) -> Drawing:
    """ForceDir with the per-iteration collinearity projection. With an
    empty path set this is bitwise identical to layout_force_directed."""
    ordered = validate_path_set(graph, paths)
    return _run(graph, params, ordered)


def _run(graph: Graph, params: ForceParams, paths: PathSet) -> Drawing:
    n = graph.n
    a = params.A if params.A is not None else float(n)
    k = params.C * math.sqrt(a / n)
    side = math.sqrt(a)
    t0 = params.initial_temperature if params.initial_temperature is not None else 0.1 * side
    d_min = 1e-6 * side
    rng = np.random.default_rng(params.seed)
    pos = rng.uniform(0.0, side, size=(n, 2))
    if n == 1:
        return Drawing(graph, {1: (float(pos[0, 0]), float(pos[0, 1]))})

    edges = graph.edge_list()
    eu = np.array([u - 1 for u, _ in edges], dtype=int)
    ev = np.array([v - 1 for _, v in edges], dtype=int)
    compiled = _compile_paths(paths, {v: v - 1 for v in range(1, n + 1)})
    iters = params.iterations

    for t in range(iters):
        temp = t0 * (1 - t / iters)
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((delta * delta).sum(axis=2))
        np.fill_diagonal(dist, 1.0)
        close = dist < d_min
        np.fill_diagonal(close, False)
        if close.any():
            # Coincident vertices get a seeded random separation direction.
            iu, ju = np.where(np.triu(close, k=1))
            theta = rng.uniform(0.0, 2 * math.pi, size=len(iu))
            unit = np.stack([np.cos(theta), np.sin(theta)], axis=1) * d_min
            delta[iu, ju] = unit
            delta[ju, iu] = -unit
            dist[iu, ju] = d_min
            dist[ju, iu] = d_min
        # Repulsion over all pairs: delta * k^2 / d^2 (self terms vanish
        # because delta[i, i] is the zero vector).
        disp = (delta * (k * k / (dist * dist))[:, :, None]).sum(axis=1)
        # Attraction along edges: d^2/k toward the neighbour.
        evec = pos[ev] - pos[eu]
        ed = np.sqrt((evec * evec).sum(axis=1))
        ed = np.maximum(ed, d_min)
        pull = evec * (ed / k)[:, None]
        np.add.at(disp, eu, pull)
        np.add.at(disp, ev, -pull)
        # Temperature cap, then the constraint projection.
        norms = np.sqrt((disp * disp).sum(axis=1))
        factor = np.where(norms > temp, temp / np.maximum(norms, 1e-300), 1.0)
        disp *= factor[:, None]
        _apply_constraints_arrays(pos, disp, compiled)
        pos = pos + disp

    positions = {v: (float(pos[v - 1, 0]), float(pos[v - 1, 1])) for v in range(1, n + 1)}
    if len(set(positions.values())) != n:
        # Paths sharing both endpoints pin internal vertices to identical
        # interpolation targets; the path set, though valid, is degenerate.
        raise AlgorithmError(
            "constrained layout collapsed two vertices onto one point; "
            "paths sharing both endpoints cannot be drawn, adjust the path set"
        )
    return Drawing(graph, positions)


def path_residuals(
    drawing: Drawing, paths: PathSet
) -> list[tuple[float, float, float]]:
    """Per path: (max point-to-line distance of internal vertices,
    max deviation from even spacing, endpoint distance)."""
    out = []
    for path in paths:
        a = np.array(drawing.positions[path[0]], dtype=float)
        b = np.array(drawing.positions[path[-1]], dtype=float)
        ab = b - a
        length = float(np.hypot(*ab))
        k = len(path) - 1
        max_line = 0.0
        max_sp = 0.0
        for i, v in enumerate(path[1:-1], start=1):
            p = np.array(drawing.positions[v], dtype=float)
            if length > 0:
                cr = ab[0] * (p - a)[1] - ab[1] * (p - a)[0]
                max_line = max(max_line, abs(float(cr)) / length)
            target = a + (i / k) * ab
            max_sp = max(max_sp, float(np.hypot(*(p - target))))
        out.append((max_line, max_sp, length))
    return out
