import pytest

from fewseg.complexity import count_segments, is_planar_drawing, odd_degree_bound
from fewseg.fewsegments import (
    FewSegParams,
    base_layout,
    heuristic1_round_vector,
    heuristic2_compress,
    heuristic3_revector,
    layout_fewsegments,
    layout_fewsegments_traced,
    stretch_candidate,
)
from fewseg.geometry import primitive_vector, shear_for
from fewseg.model import RootedTree


def path_tree(k):
    return RootedTree(k, 1, {i: i - 1 for i in range(2, k + 1)})


class TestHeuristic1:
    def test_worked_example_candidate_application(self):
        # Applying the stretch (0, 1) to the assigned vector (6, 11) yields
        # (6, 12), whose primitive direction is (1, 2).
        assert stretch_candidate((6, 11), 0, 1) == (6, 12)
        assert primitive_vector((6, 12)) == (1, 2)

    def test_zero_budget_is_identity(self):
        pts = [(0, 0), (1, 0), (2, 0)]
        vec, partner = heuristic1_round_vector(pts, pts, (3, 5), 0)
        assert vec == (3, 5)
        assert partner == (-3, -5)

    def test_matches_exhaustive_enumeration(self):
        # Independent brute force over the candidate grid with the same
        # cost definition.
        pts_s = [(0, 0), (1, 0), (2, 0), (2, 1)]
        pts_s2 = [(0, 0), (1, 0), (1, 1)]
        x, y = 2, 3
        s = 2
        best = None
        for i in range(0, s * x + 1):
            for j in range(0, s * y + 1):
                if (y + j) * x > y * (x + i):
                    continue
                cand = (x + i, y + j)
                prim = primitive_vector(cand)

                def dims(prim, pts):
                    m = shear_for(prim)
                    xs = [m[0] * a + m[2] * b for a, b in pts]
                    ys = [m[1] * a + m[3] * b for a, b in pts]
                    return max(xs) - min(xs), max(ys) - min(ys)

                w, h = dims(prim, pts_s)
                w2, h2 = dims((-prim[0], -prim[1]), pts_s2)
                key = (i + j + max(w + h, w2 + h2), i + j, i, j)
                if best is None or key < best:
                    best = key
        vec, _ = heuristic1_round_vector(pts_s, pts_s2, (x, y), s)
        assert vec == (x + best[2], y + best[3])

    def test_slope_guard_never_increases_slope(self):
        pts = [(0, 0), (3, 1), (5, 0)]
        vec, _ = heuristic1_round_vector(pts, None, (4, 7), 2)
        x, y = vec
        assert y * 4 <= 7 * x  # slope(vec) <= 7/4

    def test_solo_uses_own_box_only(self):
        pts = [(0, 0), (1, 0)]
        vec, partner = heuristic1_round_vector(pts, None, (1, 1), 2)
        assert partner is None


class TestLayout:
    def test_path_collapses_to_one_segment(self):
        for k in (2, 5, 9):
            d = layout_fewsegments(path_tree(k))
            count, _ = count_segments(d)
            assert count == 1

    def test_star_four_two_segments(self):
        t = RootedTree(5, 1, {2: 1, 3: 1, 4: 1, 5: 1})
        d = layout_fewsegments(t)
        assert count_segments(d)[0] == 2
        assert is_planar_drawing(d)

    def test_odd_degree_root(self):
        t = RootedTree(4, 1, {2: 1, 3: 1, 4: 1})
        d = layout_fewsegments(t)
        assert count_segments(d)[0] == 2

    def test_single_vertex(self):
        d = layout_fewsegments(RootedTree(1, 1, {}))
        assert d.positions == {1: (0, 0)}

    def test_optimal_and_planar_with_box_never_growing(self, small_tree_corpus):
        for key, tree in small_tree_corpus:
            drawing, trace = layout_fewsegments_traced(tree)
            assert count_segments(drawing)[0] == odd_degree_bound(tree), key
            assert is_planar_drawing(drawing), key
            for prev, cur in zip(trace, trace[1:]):
                assert cur.width <= prev.width, key
                assert cur.height <= prev.height, key
                assert cur.segments == prev.segments, key

    def test_integer_coordinates(self, small_tree_corpus):
        for _, tree in small_tree_corpus[:6]:
            assert layout_fewsegments(tree).is_integral()

    def test_deterministic(self):
        t = RootedTree(7, 1, {2: 1, 3: 1, 4: 2, 5: 2, 6: 4, 7: 4})
        a = layout_fewsegments(t)
        b = layout_fewsegments(t)
        assert a.positions == b.positions

    def test_heavy_paths_drawn_as_single_segments(self):
        # Every heavy path's vertices must be collinear in the drawing.
        from fewseg.decomposition import heavy_path_decomposition
        from fewseg.geometry import cross, sub

        t = RootedTree(9, 1, {2: 1, 3: 1, 4: 2, 5: 2, 6: 4, 7: 4, 8: 6, 9: 6})
        d = layout_fewsegments(t)
        decomp = heavy_path_decomposition(t)
        for path in decomp.paths:
            for a, b, c in zip(path, path[1:], path[2:]):
                pa, pb, pc = d.positions[a], d.positions[b], d.positions[c]
                assert cross(sub(pb, pa), sub(pc, pa)) == 0


class TestHeuristic2:
    def test_compresses_isolated_long_edge(self):
        # A 3-vertex path whose base layout leaves slack on the heavy path
        # must compress heavy edges down to unit multiples.
        t = path_tree(3)
        layout = base_layout(t, FewSegParams(s=0))
        heuristic2_compress(layout)
        d = layout.drawing()
        xs = sorted(x for x, _ in d.positions.values())
        assert xs == [0, 1, 2]

    def test_long_light_vector_compresses_to_primitive(self):
        # Light edge drawn with 3*(1,2) and nothing nearby compresses to (1,2).
        t = RootedTree(4, 1, {2: 1, 3: 1, 4: 1})
        layout = base_layout(t)
        handle = next(
            link
            for _, link in layout.root_geom.links
            if not link.root_opposite and link.vec[0] > 0
        )
        handle.vec = (3, 6)
        if handle.partner is not None:
            handle.partner.vec = (-3, -6)
        assert is_planar_drawing(layout.drawing())
        heuristic2_compress(layout)
        assert handle.vec == (1, 2)

    def test_identity_on_minimal_drawing(self):
        t = path_tree(4)
        layout = base_layout(t)
        heuristic2_compress(layout)
        before = layout.drawing().positions
        heuristic2_compress(layout)
        assert layout.drawing().positions == before

    def test_never_grows_box_and_keeps_planarity(self, small_tree_corpus):
        for key, tree in small_tree_corpus[:8]:
            layout = base_layout(tree)
            d0 = layout.drawing()
            w0, h0 = d0.size()
            heuristic2_compress(layout)
            d1 = layout.drawing()
            w1, h1 = d1.size()
            assert w1 <= w0 and h1 <= h0, key
            assert is_planar_drawing(d1), key
            assert count_segments(d1)[0] == count_segments(d0)[0], key


class TestHeuristic3:
    def test_identity_when_no_edge_qualifies(self):
        # After full compression of a path there is no light edge at all.
        t = path_tree(5)
        layout = base_layout(t)
        heuristic2_compress(layout)
        before = layout.drawing().positions
        heuristic3_revector(layout)
        assert layout.drawing().positions == before

    def test_shrinks_overlong_spoke(self):
        # A base layout (no compression) leaves long light vectors; the
        # re-vectoring pass must find strictly shorter ones when qualified.
        t = RootedTree(7, 1, {2: 1, 3: 1, 4: 1, 5: 1, 6: 2, 7: 2})
        layout = base_layout(t)
        handles_before = {
            v: layout.edge_vector(v) for v in range(2, 8) if v in (3, 5)
        }
        w0, h0 = layout.drawing().size()
        heuristic3_revector(layout)
        d = layout.drawing()
        w1, h1 = d.size()
        assert w1 <= w0 and h1 <= h0
        assert is_planar_drawing(d)
        changed = False
        for v, old in handles_before.items():
            new = layout.edge_vector(v)
            if abs(new[0]) + abs(new[1]) < abs(old[0]) + abs(old[1]):
                changed = True
        assert changed

    def test_rounds_monotone_on_corpus(self, small_tree_corpus):
        for key, tree in small_tree_corpus[:8]:
            _, trace = layout_fewsegments_traced(tree, FewSegParams())
            widths = [t.width for t in trace]
            heights = [t.height for t in trace]
            assert widths == sorted(widths, reverse=True) or all(
                widths[i] >= widths[i + 1] for i in range(len(widths) - 1)
            ), key
            assert all(
                heights[i] >= heights[i + 1] for i in range(len(heights) - 1)
            ), key


def test_params_validation():
    with pytest.raises(ValueError):
        FewSegParams(s=-1)
    with pytest.raises(ValueError):
        FewSegParams(heuristic_rounds=-2)
