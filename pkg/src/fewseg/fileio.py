"""File formats: edge lists, rooted-tree files, a GraphML subset, path
files, and the stimulus JSON document.

Parsing is strict: malformed lines raise InputError with the line number
rather than being skipped. External vertex ids are normalised to dense
1..n labels (numeric order when every id is numeric, lexicographic
otherwise).
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Any

from .model import Drawing, Graph, InputError, RootedTree


def atomic_write(path: str, data: str) -> None:
    """Write via temp file + rename so readers never see partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fewseg-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# Edge lists and tree files
# ---------------------------------------------------------------------------


def _parse_edge_lines(text: str, origin: str):
    edges: list[tuple[str, str, int]] = []
    root: tuple[str, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "root":
            if len(parts) != 2:
                raise InputError(f"{origin}:{lineno}: root line needs one label")
            if root is not None:
                raise InputError(f"{origin}:{lineno}: second root line")
            root = (parts[1], lineno)
            continue
        if len(parts) != 2:
            raise InputError(f"{origin}:{lineno}: expected 'u v', got {line!r}")
        edges.append((parts[0], parts[1], lineno))
    return edges, root


def _normalise(ids: list[str]) -> dict[str, int]:
    uniq = sorted(set(ids), key=(lambda s: (0, int(s)) if s.lstrip("-").isdigit() else (1, s)))
    if all(s.lstrip("-").isdigit() for s in uniq):
        uniq.sort(key=int)
    return {s: i + 1 for i, s in enumerate(uniq)}


def loads_graph(text: str, origin: str = "<string>") -> Graph:
    """Edge-list text -> Graph with labels normalised to 1..n."""
    raw, root = _parse_edge_lines(text, origin)
    if root is not None:
        raise InputError(f"{origin}:{root[1]}: root line in a graph file")
    if not raw:
        raise InputError(f"{origin}: no edges")
    label = _normalise([u for u, _, _ in raw] + [v for _, v, _ in raw])
    n = len(label)
    seen = set()
    edges = []
    for u, v, lineno in raw:
        a, b = label[u], label[v]
        if a == b:
            raise InputError(f"{origin}:{lineno}: self-loop {u} {v}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise InputError(f"{origin}:{lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def loads_tree(text: str, origin: str = "<string>") -> RootedTree:
    """Edge-list text with one 'root <label>' line -> RootedTree."""
    raw, root = _parse_edge_lines(text, origin)
    if root is None:
        raise InputError(f"{origin}: tree file needs a 'root <label>' line")
    if not raw:
        return RootedTree(1, 1, {})
    label = _normalise([u for u, _, _ in raw] + [v for _, v, _ in raw])
    if root[0] not in label:
        raise InputError(f"{origin}:{root[1]}: root {root[0]!r} not in any edge")
    n = len(label)
    if len(raw) != n - 1:
        raise InputError(f"{origin}: {len(raw)} edges for {n} vertices, not a tree")
    from .generators import root_tree

    return root_tree(n, [(label[u], label[v]) for u, v, _ in raw], label[root[0]])


def dumps_graph(graph: Graph) -> str:
    lines = [f"{u} {v}" for u, v in graph.edge_list()]
    return "\n".join(lines) + "\n"


def dumps_tree(tree: RootedTree) -> str:
    lines = [f"root {tree.root}"]
    lines += [f"{p} {c}" for p, c in tree.edges()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# GraphML subset
# ---------------------------------------------------------------------------

_GML_NS = "{http://graphml.graphdrawing.org/xmlns}"


def loads_graphml(text: str, origin: str = "<string>") -> Graph:
    """Minimal GraphML: node ids and undirected edges; attributes ignored."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise InputError(f"{origin}: not well-formed GraphML: {exc}") from exc
    tag = root.tag
    ns = _GML_NS if tag.startswith(_GML_NS) else ""
    graph_el = root.find(f"{ns}graph")
    if graph_el is None:
        raise InputError(f"{origin}: missing <graph> element")
    if graph_el.get("edgedefault", "undirected") == "directed":
        raise InputError(f"{origin}: directed GraphML not supported")
    ids = [n.get("id") for n in graph_el.findall(f"{ns}node")]
    if any(i is None for i in ids):
        raise InputError(f"{origin}: node without id")
    label = _normalise(ids)
    edges = []
    seen = set()
    for e in graph_el.findall(f"{ns}edge"):
        s, t = e.get("source"), e.get("target")
        if s not in label or t not in label:
            raise InputError(f"{origin}: edge endpoint {s!r}/{t!r} unknown")
        a, b = label[s], label[t]
        if a == b:
            raise InputError(f"{origin}: self-loop at {s}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise InputError(f"{origin}: duplicate edge {s}-{t}")
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(len(label), edges)


def load_graph_file(path: str) -> Graph:
    """Edge-list or GraphML file -> Graph (strict parse)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if path.endswith((".graphml", ".xml")) or text.lstrip().startswith("<"):
        return loads_graphml(text, path)
    return loads_graph(text, path)


def load_tree_file(path: str) -> RootedTree:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return loads_tree(text, path)


# ---------------------------------------------------------------------------
# Path files
# ---------------------------------------------------------------------------


def loads_paths(text: str, origin: str = "<string>") -> list[list[int]]:
    """One path per line: whitespace-separated 1-based vertex labels."""
    paths = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            path = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise InputError(f"{origin}:{lineno}: non-integer label") from exc
        paths.append(path)
    return paths


def dumps_paths(paths: list[list[int]]) -> str:
    return "".join(" ".join(str(v) for v in p) + "\n" for p in paths)


def load_paths_file(path: str) -> list[list[int]]:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads_paths(fh.read(), path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Stimulus JSON
# ---------------------------------------------------------------------------


@dataclass
class StimulusDocument:
    """Serialized drawing: vertex coordinates plus the edge set, with the
    provenance (layout name, seed, generator parameters) in metadata."""

    vertices: list[dict[str, Any]]
    edges: list[dict[str, int]]
    metadata: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> "StimulusDocument":
        ids = [v["id"] for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate vertex ids in stimulus")
        known = set(ids)
        for v in self.vertices:
            if not (math.isfinite(v["x"]) and math.isfinite(v["y"])):
                raise InputError(f"non-finite coordinate at vertex {v['id']}")
        for e in self.edges:
            if e["source"] not in known or e["target"] not in known:
                raise InputError(f"edge {e} references unknown vertex")
        return self

    def to_json(self) -> str:
        return json.dumps(
            {"vertices": self.vertices, "edges": self.edges, "metadata": self.metadata},
            indent=2,
        ) + "\n"

    @staticmethod
    def from_json(text: str, origin: str = "<string>") -> "StimulusDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(
                f"{origin}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
        try:
            doc = StimulusDocument(
                vertices=[
                    {"id": int(v["id"]), "x": v["x"], "y": v["y"]} for v in obj["vertices"]
                ],
                edges=[
                    {"source": int(e["source"]), "target": int(e["target"])}
                    for e in obj["edges"]
                ],
                metadata=obj.get("metadata", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{origin}: malformed stimulus document: {exc}") from exc
        return doc.validate()

    @staticmethod
    def from_drawing(
        drawing: Drawing, layout: str, seed: int | None = None, generator: dict | None = None
    ) -> "StimulusDocument":
        flip = -1 if layout in ("tidier", "quad", "fewsegments") else 1
        vertices = [
            {"id": v, "x": x, "y": flip * y}
            for v, (x, y) in sorted(drawing.positions.items())
        ]
        edges = [{"source": u, "target": v} for u, v in drawing.edge_list()]
        meta: dict[str, Any] = {"layout": layout, "seed": seed}
        if generator:
            meta["generator"] = generator
        return StimulusDocument(vertices, edges, meta)
