"""Layered tree layout in the classic top-down style.

Satisfies the three aesthetic criteria exactly on the integer grid:
(1) vertices of equal depth share a y-coordinate (y = -depth),
(2) every parent sits at the midpoint of its children's extreme
    x-coordinates (sibling subtrees are separated by even amounts, so the
    midpoint is always integral),
(3) rooted-isomorphic subtrees receive translation-congruent drawings
    (children are ordered by canonical subtree shape, so equal shapes are
    processed identically regardless of labels).
"""

from __future__ import annotations

from .model import Drawing, RootedTree


def layout_tidier(tree: RootedTree) -> Drawing:
    children = tree.children()
    shape = _shape_keys(tree, children)
    ordered = {
        v: sorted(children[v], key=lambda c: (shape[c], c)) for v in children
    }

    # offsets[v] = x offset of child v relative to its parent.
    offsets: dict[int, int] = {tree.root: 0}
    # Post-order contour construction: contour[v] = per-level (lo, hi)
    # x-extents of v's subtree relative to v.
    contour: dict[int, list[tuple[int, int]]] = {}
    for v in _postorder(tree, ordered):
        ch = ordered[v]
        if not ch:
            contour[v] = [(0, 0)]
            continue
        placed = [0]
        acc = list(contour[ch[0]])
        for c in ch[1:]:
            right = contour[c]
            sep = 0
            for lvl in range(min(len(acc), len(right))):
                sep = max(sep, acc[lvl][1] - right[lvl][0] + 2)
            if sep % 2:
                sep += 1  # keep sibling offsets even so midpoints stay integral
            pos = sep  # relative to the first child; acc extents already absolute
            placed.append(pos)
            for lvl in range(len(right)):
                lo = right[lvl][0] + pos
                hi = right[lvl][1] + pos
                if lvl < len(acc):
                    acc[lvl] = (min(acc[lvl][0], lo), max(acc[lvl][1], hi))
                else:
                    acc.append((lo, hi))
        mid = (placed[0] + placed[-1]) // 2
        for c, pos in zip(ch, placed):
            offsets[c] = pos - mid
        contour[v] = [(0, 0)] + [(lo - mid, hi - mid) for lo, hi in acc]

    depths = tree.depths()
    positions: dict[int, tuple[int, int]] = {}
    stack = [(tree.root, 0)]
    while stack:
        v, x = stack.pop()
        positions[v] = (x, -depths[v])
        for c in ordered[v]:
            stack.append((c, x + offsets[c]))
    xmin = min(x for x, _ in positions.values())
    positions = {v: (x - xmin, y) for v, (x, y) in positions.items()}
    return Drawing(tree, positions)


def _postorder(tree: RootedTree, ordered: dict[int, list[int]]) -> list[int]:
    out: list[int] = []
    stack: list[tuple[int, bool]] = [(tree.root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            out.append(v)
            continue
        stack.append((v, True))
        for c in reversed(ordered[v]):
            stack.append((c, False))
    return out


def _shape_keys(tree: RootedTree, children: dict[int, list[int]]) -> dict[int, str]:
    """AHU canonical encoding: equal strings iff rooted-isomorphic subtrees."""
    key: dict[int, str] = {}
    for v in _postorder(tree, children):
        key[v] = "(" + "".join(sorted(key[c] for c in children[v])) + ")"
    return key
