"""Pydantic request/response models for the layout service."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

from .model import Graph, RootedTree


class GraphPayload(BaseModel):
    n: int
    edges: list[tuple[int, int]]

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)

    @staticmethod
    def from_graph(g: Graph) -> "GraphPayload":
        return GraphPayload(n=g.n, edges=g.edge_list())


class TreePayload(BaseModel):
    n: int
    root: int
    edges: list[tuple[int, int]]

    def to_tree(self) -> RootedTree:
        from .generators import root_tree

        return root_tree(self.n, [tuple(e) for e in self.edges], self.root)

    @staticmethod
    def from_tree(t: RootedTree) -> "TreePayload":
        return TreePayload(n=t.n, root=t.root, edges=t.edges())


class GenerateTreeRequest(BaseModel):
    size_class: Literal[1, 2] = 1
    depth_class: Literal["deep", "balanced", "wide"] = "balanced"
    seed: int = 0


class GenerateTreeResponse(BaseModel):
    tree: TreePayload
    seed: int
    depth: int


class GenerateGraphRequest(BaseModel):
    size_class: Literal[1, 2] = 1
    seed: int = 0
    n: Optional[int] = None  # explicit overrides for non-preset sizes
    m: Optional[int] = None


class GenerateGraphResponse(BaseModel):
    graph: GraphPayload
    seed: int


class ForceParamsModel(BaseModel):
    C: float = 1.0
    A: Optional[float] = None
    iterations: int = 500
    initial_temperature: Optional[float] = None


class QuadParamsModel(BaseModel):
    angular_coefficient: float = 22.5
    quadrants: int = 4


class FewSegParamsModel(BaseModel):
    s: int = 2
    heuristic_rounds: int = 5


class LayoutRequest(BaseModel):
    algorithm: Literal["tidier", "quad", "fewsegments", "forcedir", "fdfewseg"]
    tree: Optional[TreePayload] = None
    graph: Optional[GraphPayload] = None
    seed: int = 0
    paths: Optional[list[list[int]]] = None
    force: ForceParamsModel = Field(default_factory=ForceParamsModel)
    quad: QuadParamsModel = Field(default_factory=QuadParamsModel)
    fewseg: FewSegParamsModel = Field(default_factory=FewSegParamsModel)
    generator: Optional[dict[str, Any]] = None


class StimulusVertex(BaseModel):
    id: int
    x: float
    y: float


class StimulusEdge(BaseModel):
    source: int
    target: int


class StimulusModel(BaseModel):
    vertices: list[StimulusVertex]
    edges: list[StimulusEdge]
    metadata: dict[str, Any] = Field(default_factory=dict)


class RenderRequest(BaseModel):
    stimulus: StimulusModel
    node_color: str = "#1f6fb5"
    edge_color: str = "#000000"
    halo_color: str = "#ffffff"
    selected_nodes: list[int] = Field(default_factory=list)
    selectable_nodes: list[int] = Field(default_factory=list)
    selected_edges: list[tuple[int, int]] = Field(default_factory=list)
    selectable_edges: list[tuple[int, int]] = Field(default_factory=list)


class MetricsInstance(BaseModel):
    instance_id: str
    tree: Optional[TreePayload] = None
    graph: Optional[GraphPayload] = None


class MetricsRequest(BaseModel):
    instances: list[MetricsInstance]
    algorithms: list[str]
    seed: int = 0


class PathsRequest(BaseModel):
    graph: GraphPayload
    seed: int = 0
    max_turn: float = 45.0
    min_len: int = 2
    force: ForceParamsModel = Field(default_factory=ForceParamsModel)


class PathsResponse(BaseModel):
    paths: list[list[int]]
