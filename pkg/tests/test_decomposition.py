import math

from fewseg.decomposition import heavy_path_decomposition, light_depth, subtree_sizes
from fewseg.generators import TreeSpec, random_tree
from fewseg.model import RootedTree


def test_path_is_single_heavy_path():
    t = RootedTree(3, 1, {2: 1, 3: 2})
    d = heavy_path_decomposition(t)
    assert d.paths == [[1, 2, 3]]


def test_star_tie_break_lowest_label():
    # All child subtrees have size 1; the heavy child must be the lowest label.
    t = RootedTree(4, 1, {2: 1, 3: 1, 4: 1})
    d = heavy_path_decomposition(t)
    assert d.heavy_child[1] == 2
    assert sorted(map(tuple, d.paths)) == [(1, 2), (3,), (4,)]


def test_heavy_child_maximises_subtree_size():
    for seed in range(8):
        t = random_tree(TreeSpec(2, "balanced", seed))
        d = heavy_path_decomposition(t)
        size = subtree_sizes(t)
        for v, ch in t.children().items():
            if ch:
                h = d.heavy_child[v]
                assert all(size[h] >= size[c] for c in ch)


def test_light_depth_logarithmic_bound():
    # Brute force every root-leaf path: the number of light edges on it is
    # at most floor(log2 n).
    for seed in range(10):
        t = random_tree(TreeSpec(2, "deep", seed))
        d = heavy_path_decomposition(t)
        bound = int(math.log2(t.n))
        leaves = [v for v in range(1, t.n + 1) if not t.children()[v]]
        for leaf in leaves:
            crossings = 0
            v = leaf
            while v != t.root:
                p = t.parent[v]
                if d.heavy_child[p] != v:
                    crossings += 1
                v = p
            assert crossings <= bound
            assert crossings == light_depth(d, leaf)


def test_paths_partition_vertices():
    for seed in range(6):
        t = random_tree(TreeSpec(1, "deep", seed))
        d = heavy_path_decomposition(t)
        seen = [v for p in d.paths for v in p]
        assert sorted(seen) == list(range(1, t.n + 1))
