"""Exact 2D predicates for grid drawings, plus tolerance variants for reals.

Integer inputs use exact arithmetic (Python ints never overflow), so the
planarity verdicts driving the tree-layout heuristics cannot be corrupted
by rounding. Float inputs (force layouts) get a relative tolerance only
where the caller asks for one (collinearity chaining).
"""

from __future__ import annotations

import math

Vec = tuple[float, float]

# Relative collinearity tolerance for real-coordinate drawings.
EPS_COL = 1e-6


def cross(u: Vec, v: Vec):
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Vec, v: Vec):
    return u[0] * v[0] + u[1] * v[1]


def sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def orientation(a: Vec, b: Vec, c: Vec) -> int:
    """Sign of the turn a->b->c: +1 left, -1 right, 0 collinear."""
    s = cross(sub(b, a), sub(c, a))
    return (s > 0) - (s < 0)


def primitive_vector(v: tuple[int, int]) -> tuple[int, int]:
    """v divided by gcd(|x|, |y|); sign preserved. Rejects (0, 0)."""
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no primitive direction")
    g = math.gcd(abs(x), abs(y))
    return (x // g, y // g)


def vector_multiple(v: tuple[int, int]) -> int:
    """The k >= 1 with v = k * primitive_vector(v)."""
    return math.gcd(abs(v[0]), abs(v[1]))


def unimodular_complement(prim: tuple[int, int]) -> tuple[int, int]:
    """An integer q with det[prim | q] = 1, chosen with minimal norm.

    The matrix [prim | q] is then a unimodular change of basis mapping the
    canonical axis (1, 0) onto prim; it preserves integrality, gcds,
    collinearity and planarity exactly.
    """
    a, b = prim
    if math.gcd(abs(a), abs(b)) != 1:
        raise ValueError(f"{prim} is not primitive")
    # Extended Euclid: find u, v with a*u + b*v = 1, then q = (-v, u).
    u, v = _ext_gcd(a, b)
    c, d = -v, u
    # Reduce q modulo prim to keep the shear well conditioned.
    denom = a * a + b * b
    t = round((-(c * a + d * b)) / denom)
    best = None
    for tt in (t - 1, t, t + 1):
        q = (c + tt * a, d + tt * b)
        score = q[0] * q[0] + q[1] * q[1]
        if best is None or score < best[0]:
            best = (score, q)
    return best[1]


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    """(u, v) with a*u + b*v = gcd = 1 for coprime a, b (any signs)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def mat_mul(m: tuple[int, int, int, int], v: Vec) -> Vec:
    """Apply the column-matrix (m[0] m[2]; m[1] m[3]) to v."""
    return (m[0] * v[0] + m[2] * v[1], m[1] * v[0] + m[3] * v[1])


def mat_compose(a, b) -> tuple[int, int, int, int]:
    """Matrix product a @ b, both column-major 4-tuples."""
    return (
        a[0] * b[0] + a[2] * b[1],
        a[1] * b[0] + a[3] * b[1],
        a[0] * b[2] + a[2] * b[3],
        a[1] * b[2] + a[3] * b[3],
    )


def mat_inv_unimodular(m: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    det = m[0] * m[3] - m[1] * m[2]
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return (m[3] * det, -m[1] * det, -m[2] * det, m[0] * det)


def shear_for(prim: tuple[int, int]) -> tuple[int, int, int, int]:
    """Unimodular matrix taking (1, 0) to prim (column-major 4-tuple)."""
    q = unimodular_complement(prim)
    return (prim[0], prim[1], q[0], q[1])


def point_on_segment(p: Vec, a: Vec, b: Vec) -> bool:
    """True iff p lies in the RELATIVE INTERIOR of segment ab (exact)."""
    if cross(sub(b, a), sub(p, a)) != 0:
        return False
    d = dot(sub(p, a), sub(b, a))
    return 0 < d < dot(sub(b, a), sub(b, a))


def segments_cross(a: Vec, b: Vec, c: Vec, d: Vec) -> bool:
    """True iff segments ab and cd share a point that is not a shared endpoint.

    Intended for NON-incident edges: proper crossings, endpoint-on-interior
    touches, and collinear overlaps all count. Exact for integer input.
    """
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    # Collinear configurations: any endpoint inside the other segment, or
    # identical endpoints (the caller guarantees non-incidence, so a shared
    # coordinate means overlapping geometry).
    if o1 == 0 and _within(c, a, b):
        return True
    if o2 == 0 and _within(d, a, b):
        return True
    if o3 == 0 and _within(a, c, d):
        return True
    if o4 == 0 and _within(b, c, d):
        return True
    return False


def _within(p: Vec, a: Vec, b: Vec) -> bool:
    """p on segment ab inclusive of endpoints (assumes collinear)."""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
        a[1], b[1]
    )


def collinear_through(u: Vec, v: Vec, eps: float | None) -> bool:
    """True iff edge vectors u, v leaving a common vertex continue one line.

    The chain continues only when the vectors point to OPPOSITE sides
    (dot < 0); two edges leaving the same way overlap instead of chaining.
    eps=None means exact integer arithmetic; otherwise |cross| is compared
    against eps * |u| * |v|.
    """
    c = cross(u, v)
    if eps is None:
        if c != 0:
            return False
    else:
        if abs(c) > eps * math.hypot(*u) * math.hypot(*v):
            return False
    return dot(u, v) < 0


def angle_between(u: Vec, v: Vec) -> float:
    """Unsigned angle between u and v in degrees, in [0, 180]."""
    return math.degrees(abs(math.atan2(cross(u, v), dot(u, v))))
