"""Heavy path decomposition of rooted trees.

Every internal vertex marks the edge to a largest-subtree child as heavy
(ties broken toward the lowest label, so layouts are reproducible);
maximal heavy chains partition the vertices into heavy paths.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import RootedTree


@dataclass(frozen=True)
class HeavyPathDecomposition:
    tree: RootedTree
    heavy_child: dict[int, int | None]
    paths: list[list[int]]
    subtree_size: dict[int, int]

    def path_of(self, v: int) -> list[int]:
        for p in self.paths:
            if v in p:
                return p
        raise KeyError(v)


def subtree_sizes(tree: RootedTree) -> dict[int, int]:
    size = {v: 1 for v in range(1, tree.n + 1)}
    order = _topo_leaves_up(tree)
    for v in order:
        if v != tree.root:
            size[tree.parent[v]] += size[v]
    return size


def _topo_leaves_up(tree: RootedTree) -> list[int]:
    """Vertices ordered children before parents."""
    depths = tree.depths()
    return sorted(range(1, tree.n + 1), key=lambda v: -depths[v])


def heavy_path_decomposition(tree: RootedTree) -> HeavyPathDecomposition:
    size = subtree_sizes(tree)
    children = tree.children()
    heavy: dict[int, int | None] = {}
    for v in range(1, tree.n + 1):
        ch = children[v]
        if not ch:
            heavy[v] = None
        else:
            # Max subtree size, lowest label on ties (children pre-sorted).
            heavy[v] = max(ch, key=lambda c: (size[c], -c))

    paths: list[list[int]] = []
    heads = [tree.root] + [
        v for v in range(1, tree.n + 1) if v != tree.root and heavy[tree.parent[v]] != v
    ]
    for head in sorted(heads, key=lambda h: -size[h]):
        path = [head]
        while heavy[path[-1]] is not None:
            path.append(heavy[path[-1]])
        paths.append(path)
    return HeavyPathDecomposition(tree, heavy, paths, size)


def light_depth(decomp: HeavyPathDecomposition, v: int) -> int:
    """Number of light edges on the root-to-v path."""
    tree = decomp.tree
    count = 0
    while v != tree.root:
        p = tree.parent[v]
        if decomp.heavy_child[p] != v:
            count += 1
        v = p
    return count
