"""Per-drawing quality measures and batch comparison reports.

Measures follow the usual formal criteria: visual complexity (segments),
the tree lower bound n_odd/2, crossings, bounding box, minimum angle
between consecutive incident edges, and the coefficient of variation of
edge lengths as a spacing-uniformity proxy (a non-standard measure; chosen
because even vertex spacing along paths is what the constrained layout
aims for).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .complexity import count_crossings, count_segments, odd_degree_bound
from .model import Drawing, Graph, InputError, RootedTree

CSV_COLUMNS = [
    "instance_id",
    "layout",
    "segments",
    "lower_bound",
    "crossings",
    "width",
    "height",
    "area",
    "min_angle_deg",
    "edge_length_cv",
    "error",
]


@dataclass(frozen=True)
class MetricsRecord:
    segments: int
    lower_bound: int | None
    crossings: int
    width: float
    height: float
    area: float
    min_angle_deg: float
    edge_length_cv: float


def evaluate(drawing: Drawing, tree_mode: bool = False) -> MetricsRecord:
    """All quality measures of one drawing; pure in the drawing, blind to
    which layout produced it."""
    segments, _ = count_segments(drawing)
    lower = None
    if tree_mode:
        if not isinstance(drawing.graph, RootedTree):
            raise InputError("tree_mode needs a RootedTree drawing")
        lower = odd_degree_bound(drawing.graph)
    w, h = drawing.size()
    return MetricsRecord(
        segments=segments,
        lower_bound=lower,
        crossings=count_crossings(drawing),
        width=w,
        height=h,
        area=w * h,
        min_angle_deg=_min_angle(drawing),
        edge_length_cv=_edge_length_cv(drawing),
    )


def _min_angle(drawing: Drawing) -> float:
    """Smallest angle between consecutive incident edges over all vertices,
    degrees. 180 when no vertex has two or more edges."""
    pos = drawing.positions
    incident: dict[int, list[int]] = {}
    for u, v in drawing.edge_list():
        incident.setdefault(u, []).append(v)
        incident.setdefault(v, []).append(u)
    best = 180.0
    for v, nbrs in incident.items():
        if len(nbrs) < 2:
            continue
        x, y = pos[v]
        angles = sorted(
            math.atan2(pos[u][1] - y, pos[u][0] - x) for u in nbrs
        )
        gaps = [angles[i + 1] - angles[i] for i in range(len(angles) - 1)]
        gaps.append(2 * math.pi - (angles[-1] - angles[0]))
        best = min(best, math.degrees(min(gaps)))
    return best


def _edge_length_cv(drawing: Drawing) -> float:
    lengths = [
        math.dist(drawing.positions[u], drawing.positions[v])
        for u, v in drawing.edge_list()
    ]
    if not lengths:
        return 0.0
    mean = sum(lengths) / len(lengths)
    if mean == 0:
        return 0.0
    var = sum((x - mean) ** 2 for x in lengths) / len(lengths)
    return math.sqrt(var) / mean


TREE_LAYOUTS = ("tidier", "quad", "fewsegments")
GRAPH_LAYOUTS = ("forcedir", "fdfewseg")
ALL_LAYOUTS = TREE_LAYOUTS + GRAPH_LAYOUTS


def run_layout(
    name: str, instance: Graph | RootedTree, seed: int, paths=None
) -> Drawing:
    """Dispatch a layout by CLI name; tree layouts require a RootedTree."""
    if name in TREE_LAYOUTS:
        if not isinstance(instance, RootedTree):
            raise InputError(f"layout {name} requires a tree input")
        if name == "tidier":
            from .tidier import layout_tidier

            return layout_tidier(instance)
        if name == "quad":
            from .quad import QuadParams, layout_quad

            return layout_quad(instance, QuadParams())
        from .fewsegments import FewSegParams, layout_fewsegments

        return layout_fewsegments(instance, FewSegParams())
    if name in GRAPH_LAYOUTS:
        from .force import ForceParams, layout_fdfewseg, layout_force_directed

        graph = instance.as_graph() if isinstance(instance, RootedTree) else instance
        params = ForceParams(seed=seed)
        if name == "forcedir":
            return layout_force_directed(graph, params)
        if paths is None:
            from .paths import select_paths

            base = layout_force_directed(graph, params)
            paths = select_paths(graph, base)
        return layout_fdfewseg(graph, paths, params)
    raise InputError(f"unknown layout {name!r}; expected one of {ALL_LAYOUTS}")


def batch_report(
    corpus: list[tuple[str, Graph | RootedTree]],
    layouts: list[str],
    seed: int = 0,
) -> str:
    """One CSV row per (instance, layout) plus per-layout MEAN rows.

    Inapplicable pairings (tree layout on a graph) keep their row with the
    message in the error column; the run continues. Floats are written
    with 6 significant digits, so equal inputs give byte-identical output.
    """
    for name in layouts:
        if name not in ALL_LAYOUTS:
            raise InputError(f"unknown layout {name!r}; expected one of {ALL_LAYOUTS}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    sums: dict[str, list[list[float]]] = {name: [] for name in layouts}
    for instance_id, instance in corpus:
        for name in layouts:
            try:
                drawing = run_layout(name, instance, seed)
                rec = evaluate(drawing, tree_mode=isinstance(instance, RootedTree))
            except InputError as exc:
                writer.writerow([instance_id, name] + [""] * 8 + [str(exc)])
                continue
            row = _numeric_row(rec)
            sums[name].append(row)
            writer.writerow([instance_id, name] + [_fmt(x) for x in row] + [""])
    for name in layouts:
        rows = sums[name]
        if not rows:
            continue
        means = []
        for col in zip(*rows):
            vals = [x for x in col if not math.isnan(x)]
            means.append(sum(vals) / len(vals) if vals else float("nan"))
        writer.writerow(["MEAN", name] + [_fmt(x) for x in means] + [""])
    return buf.getvalue()


def _numeric_row(rec: MetricsRecord) -> list[float]:
    return [
        rec.segments,
        rec.lower_bound if rec.lower_bound is not None else float("nan"),
        rec.crossings,
        rec.width,
        rec.height,
        rec.area,
        rec.min_angle_deg,
        rec.edge_length_cv,
    ]


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return ""
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.6g}"
