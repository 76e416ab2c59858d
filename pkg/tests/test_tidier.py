import random

from fewseg.complexity import is_planar_drawing
from fewseg.model import RootedTree
from fewseg.tidier import layout_tidier


def test_single_vertex_at_origin():
    d = layout_tidier(RootedTree(1, 1, {}))
    assert d.positions == {1: (0, 0)}


def test_root_with_two_leaves():
    d = layout_tidier(RootedTree(3, 1, {2: 1, 3: 1}))
    assert d.positions[1] == (1, 0)
    assert sorted([d.positions[2], d.positions[3]]) == [(0, -1), (2, -1)]


def test_levels_share_y(small_tree_corpus):
    for _, tree in small_tree_corpus:
        d = layout_tidier(tree)
        depths = tree.depths()
        for v, (x, y) in d.positions.items():
            assert y == -depths[v]


def test_parent_centered_over_offspring(small_tree_corpus):
    for _, tree in small_tree_corpus:
        d = layout_tidier(tree)
        children = tree.children()
        for v in range(1, tree.n + 1):
            ch = children[v]
            if not ch:
                continue
            xs = [d.positions[c][0] for c in ch]
            assert min(xs) + max(xs) == 2 * d.positions[v][0]


def test_planar_on_corpus(small_tree_corpus):
    for key, tree in small_tree_corpus:
        assert is_planar_drawing(layout_tidier(tree)), key


def test_linear_grid(small_tree_corpus):
    for _, tree in small_tree_corpus:
        w, h = layout_tidier(tree).size()
        assert w <= 2 * tree.n
        assert h <= tree.n


def _attach(parent_map, labels, base, parent):
    """Attach a subtree shape (list of (child_idx, parent_idx)) at `parent`."""
    for c, p in labels:
        parent_map[base + c] = parent if p == 0 else base + p


def test_duplicated_subtrees_translation_congruent():
    # Random base trees with a duplicated random subtree shape grafted at
    # two leaves, labels assigned differently on purpose.
    rng = random.Random(99)
    for _ in range(10):
        shape = [(1, 0)]
        for i in range(2, rng.randint(3, 6)):
            shape.append((i, rng.randint(0, i - 1)))
        parent_map = {2: 1, 3: 1}
        base_a = 3
        _attach(parent_map, shape, base_a, 2)
        base_b = 3 + len(shape)
        _attach(parent_map, [(c, p) for c, p in shape], base_b, 3)
        n = 3 + 2 * len(shape)
        tree = RootedTree(n, 1, parent_map)
        d = layout_tidier(tree)
        off = None
        for c, _ in shape:
            a = d.positions[base_a + c]
            b = d.positions[base_b + c]
            delta = (b[0] - a[0], b[1] - a[1])
            if off is None:
                off = delta
            assert delta == off
