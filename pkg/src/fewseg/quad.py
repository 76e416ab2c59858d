"""Angular-resolution tree layout on the integer grid.

Children of a vertex are spread evenly over the angular span available to
them (up to `quadrants` * 90 degrees, centred away from the parent edge),
so consecutive child edges stay at or above the angular coefficient
whenever the even gap allows it and are simply spread evenly otherwise.
Subtree disjointness comes from enclosing-disk separation: a child's ray
length grows until its subtree disk clears every other ray at the vertex.
Ray lengths also carry a floor that keeps integer rounding within a small
angular tolerance, so the coefficient guarantee survives rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .complexity import is_planar_drawing
from .decomposition import subtree_sizes
from .model import AlgorithmError, Drawing, InputError, RootedTree


@dataclass(frozen=True)
class QuadParams:
    angular_coefficient: float = 22.5
    quadrants: int = 4

    def __post_init__(self) -> None:
        if not (0 < self.angular_coefficient <= 90):
            raise InputError("angular_coefficient must be in (0, 90]")
        if self.quadrants not in (1, 2, 3, 4):
            raise InputError("quadrants must be 1..4")


@dataclass(frozen=True)
class _FanPlan:
    gap: float  # target angle between consecutive child rays, degrees
    span_used: float  # total angular width actually used
    circular: bool  # root fan covering the full circle
    tol: float  # max allowed rounding error per ray, degrees


def angles_permit(k: int, is_root: bool, params: QuadParams) -> bool:
    """Whether k children can be placed with consecutive gaps above the
    coefficient. This is the single definition used by the layout and by
    the acceptance check; exact-threshold cases count as not permitting
    (an integer grid cannot hold a gap at exactly the coefficient)."""
    if k < 2:
        return True
    return _plan_fan(k, is_root, params).gap > params.angular_coefficient


def _plan_fan(k: int, is_root: bool, params: QuadParams) -> _FanPlan:
    c = params.angular_coefficient
    if is_root:
        span = params.quadrants * 90.0
        circular = span >= 360.0
        gaps = k if circular else max(k - 1, 1)
    else:
        span = min(params.quadrants * 90.0, 360.0 - 2 * c)
        circular = False
        gaps = max(k - 1, 1)
    even = span / gaps
    gap = min(90.0, even) if even > c else even
    permits = gap > c and k >= 2
    if permits:
        margin = min(1.0, (gap - c) / 2)
        tol = margin / 2
    else:
        tol = 0.25
    span_used = gap * (k - 1)
    return _FanPlan(gap=gap, span_used=span_used, circular=circular, tol=tol)


def layout_quad(tree: RootedTree, params: QuadParams = QuadParams()) -> Drawing:
    if tree.n == 1:
        return Drawing(tree, {tree.root: (0, 0)})
    children = tree.children()
    size = subtree_sizes(tree)
    ordered = {v: sorted(children[v], key=lambda c: (-size[c], c)) for v in children}

    last_err = None
    for scale in (1, 2, 4, 8, 16):
        rho, ray = _radii(tree, ordered, params, scale)
        positions = _place(tree, ordered, params, ray)
        drawing = Drawing(tree, positions)
        if is_planar_drawing(drawing) and _angles_ok(tree, ordered, params, positions):
            return drawing
        last_err = f"verification failed at scale {scale}"
    raise AlgorithmError(f"quad layout failed: {last_err}")


def _radii(tree, ordered, params, scale) -> tuple[dict[int, int], dict[int, int]]:
    """Bottom-up enclosing-disk radii rho[v] and ray lengths ray[child].

    Per pair of rays at a vertex: an acute separation needs
    L_i * sin(sep) > rho_i + rho_j, an obtuse one only L_i > rho_i + rho_j
    (the closest point of the other ray is the vertex itself). Rays also
    carry the rounding floor that keeps placed angles within tolerance,
    but only where an angle contract exists (two or more children).
    """
    rho: dict[int, int] = {}
    ray: dict[int, int] = {}
    for v in _postorder(tree, ordered):
        ch = ordered[v]
        if not ch:
            rho[v] = 0
            continue
        k = len(ch)
        is_root = v == tree.root
        plan = _plan_fan(k, is_root, params)
        rel = [i * plan.gap for i in range(k)]
        incoming = None if is_root else plan.span_used / 2 + 180.0
        l_round = (
            math.ceil(0.71 / math.tan(math.radians(plan.tol))) + 1 if k >= 2 else 0
        )
        for i, c in enumerate(ch):
            need = rho[c] + 2
            for j in range(k):
                if j == i:
                    continue
                need = max(need, _clear(rel[i], rel[j], rho[c] + rho[ch[j]] + 2))
            if incoming is not None:
                need = max(need, _clear(rel[i], incoming, rho[c] + 2))
            ray[c] = scale * max(need, l_round, 8)
        rho[v] = max(ray[c] + rho[c] for c in ch) + 1
    return rho, ray


def _clear(a: float, b: float, dist: int) -> int:
    """Ray length making a disk of clearance `dist` at angle a clear the
    ray at angle b (angles in degrees, circular)."""
    sep = abs(a - b) % 360.0
    sep = min(sep, 360.0 - sep)
    if sep >= 90.0:
        return dist
    return math.ceil(dist / (math.sin(math.radians(sep)) * 0.98))


def _place(tree, ordered, params, ray) -> dict[int, tuple[int, int]]:
    positions: dict[int, tuple[int, int]] = {tree.root: (0, 0)}
    stack: list[tuple[int, float | None]] = [(tree.root, None)]
    while stack:
        v, incoming = stack.pop()
        ch = ordered[v]
        if not ch:
            continue
        plan = _plan_fan(len(ch), v == tree.root, params)
        if incoming is None:
            start = 90.0 if plan.circular else -90.0 - plan.span_used / 2
        else:
            # Continue away from the parent: incoming is the parent->v
            # direction, so the fan is centred on it.
            start = incoming - plan.span_used / 2
        x, y = positions[v]
        for i, c in enumerate(ch):
            theta = math.radians(start + i * plan.gap)
            px = x + round(ray[c] * math.cos(theta))
            py = y + round(ray[c] * math.sin(theta))
            positions[c] = (px, py)
            stack.append((c, math.degrees(math.atan2(py - y, px - x))))
    return positions


def consecutive_child_angles(
    tree: RootedTree, positions: dict[int, tuple[int, int]], v: int
) -> list[float]:
    """Gaps between consecutive child edges at v, in degrees. Circular
    (wrap included) at the root, linear otherwise."""
    ch = tree.children()[v]
    if len(ch) < 2:
        return []
    x, y = positions[v]
    angles = sorted(
        math.degrees(math.atan2(positions[c][1] - y, positions[c][0] - x)) % 360.0
        for c in ch
    )
    gaps = [angles[i + 1] - angles[i] for i in range(len(angles) - 1)]
    gaps.append(360.0 - (angles[-1] - angles[0]))
    if v != tree.root:
        # The largest circular gap spans the parent edge side; the child
        # fan's consecutive angles are the remaining ones.
        gaps.remove(max(gaps))
    return gaps


def _angles_ok(tree, ordered, params, positions) -> bool:
    c = params.angular_coefficient
    for v in range(1, tree.n + 1):
        k = len(ordered[v])
        if k < 2:
            continue
        gaps = consecutive_child_angles(tree, positions, v)
        if angles_permit(k, v == tree.root, params) and min(gaps) < c - 1e-9:
            return False
    return True


def _postorder(tree, ordered) -> list[int]:
    out: list[int] = []
    stack: list[tuple[int, bool]] = [(tree.root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            out.append(v)
            continue
        stack.append((v, True))
        for ch in reversed(ordered[v]):
            stack.append((ch, False))
    return out
