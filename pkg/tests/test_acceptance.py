"""Acceptance suite: one test per criterion, at the stated tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per
criterion. Shared corpora are session fixtures so the 200-tree corpus is
generated once and reused by the criteria that quote it.
"""

import itertools
import math
import os
import subprocess
import sys
import time

import pytest

from fewseg.complexity import count_segments, is_planar_drawing, odd_degree_bound
from fewseg.fewsegments import layout_fewsegments_traced, stretch_candidate
from fewseg.force import (
    ForceParams,
    layout_fdfewseg,
    layout_force_directed,
    optimal_distance,
    path_residuals,
)
from fewseg.generators import (
    DEPTH_TARGETS,
    GraphSpec,
    TreeSpec,
    prufer_decode,
    random_sparse_graph,
    random_tree,
)
from fewseg.geometry import EPS_COL, primitive_vector
from fewseg.model import Graph, RootedTree
from fewseg.paths import select_paths
from fewseg.quad import QuadParams, angles_permit, consecutive_child_angles, layout_quad
from fewseg.tidier import layout_tidier

from test_complexity import brute_force_crossings
from test_generators import prufer_encode

EPS_SP_REL = 1e-3  # even-spacing tolerance, relative to endpoint distance


def report(num: int, ok: bool, text: str) -> None:
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}: {text}")
    assert ok, f"criterion {num} failed: {text}"


@pytest.fixture(scope="session")
def fewseg_results(acceptance_tree_corpus):
    t0 = time.time()
    out = []
    for key, tree in acceptance_tree_corpus:
        drawing, trace = layout_fewsegments_traced(tree)
        out.append((key, tree, drawing, trace))
    return out, time.time() - t0


@pytest.fixture(scope="session")
def force_pairs():
    """50 random sparse graphs per the size presets (25 per size class),
    each with its ForceDir drawing, selected paths, and FDFewSeg drawing."""
    out = []
    for size, seeds in ((1, range(25)), (2, range(25))):
        for seed in seeds:
            g = random_sparse_graph(GraphSpec(size, "random", seed))
            params = ForceParams(seed=seed)
            base = layout_force_directed(g, params)
            paths = select_paths(g, base)
            fd = layout_fdfewseg(g, paths, params)
            out.append((g, params, base, paths, fd))
    return out


def test_c01_segment_optimality(fewseg_results):
    results, elapsed = fewseg_results
    bad = [
        key
        for key, tree, drawing, _ in results
        if count_segments(drawing)[0] != odd_degree_bound(tree)
    ]
    ok = not bad and len(results) == 200 and elapsed < 60.0
    report(
        1,
        ok,
        f"segments == n_odd/2 on {len(results) - len(bad)}/200 trees, "
        f"layout pipeline took {elapsed:.1f}s (< 60s)",
    )


def test_c02_planarity_all_tree_layouts(acceptance_tree_corpus, fewseg_results):
    results, _ = fewseg_results
    violations = 0
    for (key, tree, drawing, _), (_, tree2) in zip(results, acceptance_tree_corpus):
        if not is_planar_drawing(drawing):
            violations += 1
        if not is_planar_drawing(layout_tidier(tree)):
            violations += 1
        if not is_planar_drawing(layout_quad(tree)):
            violations += 1
    report(2, violations == 0, f"{violations} planarity violations over 600 drawings")


def test_c03_heuristic_monotonicity(fewseg_results):
    results, _ = fewseg_results
    bad = 0
    for key, tree, drawing, trace in results:
        segs0 = trace[0].segments
        for prev, cur in zip(trace, trace[1:]):
            if cur.width > prev.width or cur.height > prev.height:
                bad += 1
            if cur.segments != segs0:
                bad += 1
    report(
        3,
        bad == 0,
        "bounding box never grew and segment count never changed across "
        f"5 alternating heuristic rounds on all 200 trees ({bad} violations)",
    )


def test_c04_paper_vector_rounding_example():
    vec = stretch_candidate((6, 11), 0, 1)
    ok = vec == (6, 12) and primitive_vector(vec) == (1, 2)
    report(4, ok, f"(6,11) with (i,j)=(0,1) -> {vec}, primitive {primitive_vector(vec)}")


def test_c05_tidier_criteria(acceptance_tree_corpus):
    import random as _random

    bad_levels = 0
    for _, tree in acceptance_tree_corpus:
        d = layout_tidier(tree)
        depths = tree.depths()
        if any(y != -depths[v] for v, (_, y) in d.positions.items()):
            bad_levels += 1

    rng = _random.Random(20)
    bad_congruence = 0
    for _ in range(20):
        shape = [(1, 0)]
        for i in range(2, rng.randint(3, 8)):
            shape.append((i, rng.randint(0, i - 1)))
        parent_map = {2: 1, 3: 1}
        base_a, base_b = 3, 3 + len(shape)
        for c, p in shape:
            parent_map[base_a + c] = 2 if p == 0 else base_a + p
        for c, p in shape:
            parent_map[base_b + c] = 3 if p == 0 else base_b + p
        tree = RootedTree(3 + 2 * len(shape), 1, parent_map)
        d = layout_tidier(tree)
        offsets = {
            (
                d.positions[base_b + c][0] - d.positions[base_a + c][0],
                d.positions[base_b + c][1] - d.positions[base_a + c][1],
            )
            for c, _ in shape
        }
        if len(offsets) != 1:
            bad_congruence += 1
    ok = bad_levels == 0 and bad_congruence == 0
    report(
        5,
        ok,
        f"equal depth -> equal y on all 200 trees ({bad_levels} fails); "
        f"duplicated subtrees translation-congruent on 20/20 constructions "
        f"({bad_congruence} fails)",
    )


def test_c06_quad_angles(acceptance_tree_corpus):
    params = QuadParams()  # defaults: 22.5 degrees, 4 quadrants
    worst = 180.0
    violations = 0
    for _, tree in acceptance_tree_corpus:
        d = layout_quad(tree, params)
        children = tree.children()
        for v in range(1, tree.n + 1):
            k = len(children[v])
            if k >= 2 and angles_permit(k, v == tree.root, params):
                m = min(consecutive_child_angles(tree, d.positions, v))
                worst = min(worst, m)
                if m < params.angular_coefficient - 1e-9:
                    violations += 1
    report(
        6,
        violations == 0,
        f"consecutive child angles >= 22.5 - 1e-9 wherever permitted "
        f"(worst permitted angle {worst:.6f} deg, {violations} violations)",
    )


def test_c07_force_equilibrium():
    g = Graph.from_edges(2, [(1, 2)])
    params = ForceParams(seed=17)
    d1 = layout_force_directed(g, params)
    d2 = layout_force_directed(g, params)
    k = optimal_distance(g, params)
    sep = math.dist(d1.positions[1], d1.positions[2])
    ok = abs(sep - k) <= 0.05 * k and d1.positions == d2.positions
    report(
        7,
        ok,
        f"2-vertex separation {sep:.4f} within 5% of k={k:.4f}; reruns bitwise equal",
    )


def test_c08_constraint_satisfaction(force_pairs):
    bad = 0
    n_paths = 0
    for g, params, base, paths, fd in force_pairs:
        for (line_dist, spacing, length) in path_residuals(fd, paths):
            n_paths += 1
            if line_dist > EPS_COL * length or spacing > EPS_SP_REL * length:
                bad += 1
    identical = all(
        layout_fdfewseg(g, [], params).positions
        == layout_force_directed(g, params).positions
        for g, params, _, _, _ in force_pairs[:5]
    )
    ok = bad == 0 and identical and n_paths > 0
    report(
        8,
        ok,
        f"{n_paths} constrained paths collinear within eps_col and evenly "
        f"spaced within eps_sp across 50 instances ({bad} fails); empty path "
        f"set bitwise identical to ForceDir",
    )


def test_c09_complexity_reduction(force_pairs):
    seg_base = [count_segments(base)[0] for _, _, base, _, _ in force_pairs]
    seg_fd = [count_segments(fd)[0] for _, _, _, _, fd in force_pairs]
    mean_base = sum(seg_base) / len(seg_base)
    mean_fd = sum(seg_fd) / len(seg_fd)
    report(
        9,
        mean_fd < mean_base,
        f"mean segments FDFewSeg {mean_fd:.2f} < ForceDir {mean_base:.2f} "
        f"over 50 random sparse graphs",
    )


def test_c10_generator_correctness():
    # Exhaustive Prüfer round trip for n <= 7.
    roundtrip_ok = True
    for n in range(3, 8):
        for seq in itertools.product(range(1, n + 1), repeat=n - 2):
            if prufer_encode(n, prufer_decode(list(seq), n)) != list(seq):
                roundtrip_ok = False

    # Chi-square uniformity over all 125 labelled trees on 5 vertices.
    import numpy as np
    from scipy.stats import chisquare

    rng = np.random.default_rng(123)
    counts = {}
    samples = 12_500
    for _ in range(samples):
        seq = tuple(rng.integers(1, 6, size=3).tolist())
        key = frozenset(frozenset(e) for e in prufer_decode(list(seq), 5))
        counts[key] = counts.get(key, 0) + 1
    observed = [counts.get(k, 0) for k in counts]
    assert len(counts) == 125
    _, pvalue = chisquare(observed)

    # Accepted trees hit their class target depth exactly.
    depth_ok = True
    for (size, dc), target in DEPTH_TARGETS.items():
        for seed in range(3):
            if random_tree(TreeSpec(size, dc, seed)).depth() != target:
                depth_ok = False

    ok = roundtrip_ok and pvalue > 0.01 and depth_ok
    report(
        10,
        ok,
        f"prufer round-trips exhaustively for n<=7; chi-square p={pvalue:.3f} > 0.01 "
        f"over 125 trees x 12500 samples; depths exactly 8/5/3 and 14/9/5",
    )


def test_c11_crossing_oracle_equivalence():
    import random as _random

    rng = _random.Random(31)
    mismatches = 0
    for trial in range(100):
        n = rng.randint(8, 40)
        m_max = min(200, n * (n - 1) // 2)
        m = rng.randint(n - 1, m_max)
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        g = Graph.from_edges(n, rng.sample(pairs, m))
        pos = {}
        used = set()
        for v in range(1, n + 1):
            while True:
                p = (rng.randint(0, 30), rng.randint(0, 30))
                if p not in used:
                    used.add(p)
                    pos[v] = p
                    break
        from fewseg.complexity import count_crossings
        from fewseg.model import Drawing

        d = Drawing(g, pos)
        if count_crossings(d) != brute_force_crossings(d):
            mismatches += 1
    report(
        11,
        mismatches == 0,
        f"count_crossings equals the all-pairs brute-force oracle on 100 "
        f"random drawings up to 200 edges ({mismatches} mismatches)",
    )


def test_c12_pipeline_determinism(tmp_path):
    env = {**os.environ, "PYTHONWARNINGS": "ignore"}

    def pipeline(run_dir):
        run_dir.mkdir()
        cmds = [
            ["generate", "tree", "--size", "1", "--depth-class", "balanced",
             "--seed", "5", "--out", str(run_dir / "t1.tree")],
            ["generate", "tree", "--size", "2", "--depth-class", "wide",
             "--seed", "6", "--out", str(run_dir / "t2.tree")],
            ["generate", "graph", "--size", "1", "--seed", "7",
             "--out", str(run_dir / "g1.el")],
        ]
        for cmd in cmds:
            r = subprocess.run(
                [sys.executable, "-m", "fewseg.cli", *cmd],
                capture_output=True, env=env,
            )
            assert r.returncode == 0, r.stderr
        r = subprocess.run(
            [sys.executable, "-m", "fewseg.cli", "metrics", str(run_dir),
             "--algo", "tidier", "--algo", "fewsegments", "--algo", "forcedir",
             "--seed", "9", "--out", str(run_dir / "report.csv")],
            capture_output=True, env=env,
        )
        assert r.returncode == 0, r.stderr
        return (run_dir / "report.csv").read_bytes()

    a = pipeline(tmp_path / "run1")
    b = pipeline(tmp_path / "run2")
    report(
        12,
        a == b and len(a) > 0,
        f"generate -> layout -> metrics produced byte-identical CSV twice "
        f"({len(a)} bytes)",
    )
