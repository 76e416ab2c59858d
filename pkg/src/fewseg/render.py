"""SVG emission for stimulus documents.

Nodes are blue circles; every link is drawn twice, a wide white halo
stroke underneath and the black line on top, so crossing links stay
separable. Query-task marking colours: selected elements green,
selectable elements light blue. The viewBox fits the drawing with a 5%
margin; stroke widths and node radii scale with the drawing extent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

from .fileio import StimulusDocument

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class SvgStyle:
    node_color: str = "#1f6fb5"
    edge_color: str = "#000000"
    halo_color: str = "#ffffff"
    selected_color: str = "#2ca02c"
    selectable_color: str = "#9ecae1"
    selected_nodes: frozenset[int] = field(default_factory=frozenset)
    selectable_nodes: frozenset[int] = field(default_factory=frozenset)
    selected_edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    selectable_edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)


def render_svg(doc: StimulusDocument, style: SvgStyle = SvgStyle()) -> str:
    doc.validate()
    xs = [v["x"] for v in doc.vertices]
    ys = [v["y"] for v in doc.vertices]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    w = x1 - x0
    h = y1 - y0
    span = max(w, h, 1e-9)
    margin = 0.05 * span
    vb = (x0 - margin, y0 - margin, w + 2 * margin, h + 2 * margin)

    radius = 0.012 * span
    stroke = 0.004 * span
    halo = 3 * stroke

    pos = {v["id"]: (v["x"], v["y"]) for v in doc.vertices}
    out = [
        f'<svg xmlns="{SVG_NS}" viewBox="{_f(vb[0])} {_f(vb[1])} {_f(vb[2])} {_f(vb[3])}">'
    ]
    for e in doc.edges:
        key = (min(e["source"], e["target"]), max(e["source"], e["target"]))
        color = style.edge_color
        if key in style.selected_edges:
            color = style.selected_color
        elif key in style.selectable_edges:
            color = style.selectable_color
        (ax, ay), (bx, by) = pos[e["source"]], pos[e["target"]]
        coords = f'x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" y2="{_f(by)}"'
        out.append(
            f'  <line class="halo" {coords} stroke={quoteattr(style.halo_color)} '
            f'stroke-width="{_f(halo)}" stroke-linecap="round"/>'
        )
        out.append(
            f'  <line class="edge" {coords} stroke={quoteattr(color)} '
            f'stroke-width="{_f(stroke)}" stroke-linecap="round"/>'
        )
    for v in doc.vertices:
        color = style.node_color
        if v["id"] in style.selected_nodes:
            color = style.selected_color
        elif v["id"] in style.selectable_nodes:
            color = style.selectable_color
        out.append(
            f'  <circle cx="{_f(v["x"])}" cy="{_f(v["y"])}" r="{_f(radius)}" '
            f"fill={quoteattr(color)}/>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _f(x: float) -> str:
    return f"{x:.6g}"
