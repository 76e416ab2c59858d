import pytest

from fewseg.generators import TreeSpec, random_tree

ALL_CLASSES = [(s, d) for s in (1, 2) for d in ("deep", "balanced", "wide")]


@pytest.fixture(scope="session")
def small_tree_corpus():
    """Four trees per (size, depth) class; shared across module tests."""
    corpus = []
    for size, dc in ALL_CLASSES:
        for seed in range(4):
            corpus.append(((size, dc, seed), random_tree(TreeSpec(size, dc, seed))))
    return corpus


@pytest.fixture(scope="session")
def acceptance_tree_corpus():
    """200 seeded trees spanning all six (size, depth) classes."""
    corpus = []
    per_class = [34, 34, 33, 33, 33, 33]
    for (size, dc), count in zip(ALL_CLASSES, per_class):
        for seed in range(count):
            corpus.append(((size, dc, seed), random_tree(TreeSpec(size, dc, seed))))
    assert len(corpus) == 200
    return corpus
