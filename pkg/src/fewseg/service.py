"""FastAPI service wrapping the layout engine.

Stateless compute endpoints: generation, layout, rendering, metrics, and
path selection. Every response is a pure function of the request (seeds
included), so the service can be replicated freely. Run with:
uvicorn fewseg.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import __version__
from .fileio import StimulusDocument
from .force import ForceParams, layout_force_directed
from .generators import GraphSpec, TreeSpec, random_graph, random_sparse_graph, random_tree
from .metrics import batch_report
from .model import AlgorithmError, FewsegError, InputError
from .paths import select_paths
from .render import SvgStyle, render_svg
from .schemas import (
    GenerateGraphRequest,
    GenerateGraphResponse,
    GenerateTreeRequest,
    GenerateTreeResponse,
    GraphPayload,
    LayoutRequest,
    MetricsRequest,
    PathsRequest,
    PathsResponse,
    RenderRequest,
    TreePayload,
)

app = FastAPI(title="fewseg layout service", version=__version__)


@app.exception_handler(FewsegError)
async def _fewseg_error(request: Request, exc: FewsegError) -> JSONResponse:
    category = "algorithmic" if isinstance(exc, AlgorithmError) else "input"
    return JSONResponse(
        status_code=422 if category == "input" else 500,
        content={"detail": {"category": category, "message": str(exc)}},
    )


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/generate/tree", response_model=GenerateTreeResponse)
def generate_tree(req: GenerateTreeRequest) -> GenerateTreeResponse:
    tree = random_tree(TreeSpec(req.size_class, req.depth_class, req.seed))
    return GenerateTreeResponse(
        tree=TreePayload.from_tree(tree), seed=req.seed, depth=tree.depth()
    )


@app.post("/generate/graph", response_model=GenerateGraphResponse)
def generate_graph(req: GenerateGraphRequest) -> GenerateGraphResponse:
    if req.n is not None or req.m is not None:
        if req.n is None or req.m is None:
            raise InputError("custom generation needs both n and m")
        graph = random_graph(req.n, req.m, req.seed)
    else:
        graph = random_sparse_graph(GraphSpec(req.size_class, "random", req.seed))
    return GenerateGraphResponse(graph=GraphPayload.from_graph(graph), seed=req.seed)


@app.post("/layout")
def layout(req: LayoutRequest) -> dict:
    if req.algorithm in ("tidier", "quad", "fewsegments"):
        if req.tree is None:
            raise InputError(f"layout {req.algorithm} requires a tree input")
        instance = req.tree.to_tree()
    else:
        if req.graph is not None:
            instance = req.graph.to_graph()
        elif req.tree is not None:
            instance = req.tree.to_tree().as_graph()
        else:
            raise InputError("layout requires a graph or tree input")

    if req.algorithm == "quad":
        from .quad import QuadParams, layout_quad

        drawing = layout_quad(instance, QuadParams(req.quad.angular_coefficient, req.quad.quadrants))
    elif req.algorithm == "fewsegments":
        from .fewsegments import FewSegParams, layout_fewsegments

        drawing = layout_fewsegments(instance, FewSegParams(req.fewseg.s, req.fewseg.heuristic_rounds))
    elif req.algorithm == "tidier":
        from .tidier import layout_tidier

        drawing = layout_tidier(instance)
    else:
        from .force import layout_fdfewseg

        params = ForceParams(
            C=req.force.C,
            A=req.force.A,
            iterations=req.force.iterations,
            initial_temperature=req.force.initial_temperature,
            seed=req.seed,
        )
        if req.algorithm == "forcedir":
            drawing = layout_force_directed(instance, params)
        else:
            paths = req.paths
            if paths is None:
                base = layout_force_directed(instance, params)
                paths = select_paths(instance, base)
            drawing = layout_fdfewseg(instance, paths, params)

    doc = StimulusDocument.from_drawing(
        drawing, req.algorithm, seed=req.seed, generator=req.generator
    )
    return {"vertices": doc.vertices, "edges": doc.edges, "metadata": doc.metadata}


@app.post("/render")
def render(req: RenderRequest) -> PlainTextResponse:
    doc = StimulusDocument(
        vertices=[v.model_dump() for v in req.stimulus.vertices],
        edges=[e.model_dump() for e in req.stimulus.edges],
        metadata=req.stimulus.metadata,
    )
    style = SvgStyle(
        node_color=req.node_color,
        edge_color=req.edge_color,
        halo_color=req.halo_color,
        selected_nodes=frozenset(req.selected_nodes),
        selectable_nodes=frozenset(req.selectable_nodes),
        selected_edges=frozenset((min(u, v), max(u, v)) for u, v in req.selected_edges),
        selectable_edges=frozenset((min(u, v), max(u, v)) for u, v in req.selectable_edges),
    )
    return PlainTextResponse(render_svg(doc, style), media_type="image/svg+xml")


@app.post("/metrics")
def metrics(req: MetricsRequest) -> PlainTextResponse:
    corpus = []
    for inst in req.instances:
        if inst.tree is not None:
            corpus.append((inst.instance_id, inst.tree.to_tree()))
        elif inst.graph is not None:
            corpus.append((inst.instance_id, inst.graph.to_graph()))
        else:
            raise InputError(f"instance {inst.instance_id}: neither tree nor graph")
    return PlainTextResponse(
        batch_report(corpus, req.algorithms, req.seed), media_type="text/csv"
    )


@app.post("/paths", response_model=PathsResponse)
def paths(req: PathsRequest) -> PathsResponse:
    graph = req.graph.to_graph()
    params = ForceParams(
        C=req.force.C,
        A=req.force.A,
        iterations=req.force.iterations,
        initial_temperature=req.force.initial_temperature,
        seed=req.seed,
    )
    base = layout_force_directed(graph, params)
    return PathsResponse(paths=select_paths(graph, base, req.max_turn, req.min_len))


__all__ = ["app"]
