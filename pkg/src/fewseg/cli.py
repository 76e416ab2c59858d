"""Command-line front end: a thin client of the layout service.

Commands call the FastAPI app through an in-process transport by default
(no server or network needed); --server targets a running instance
instead. File handling stays on the client side; outputs are written
atomically. Exit codes: 0 success, 1 usage error, 2 input/parse error,
3 algorithmic failure.

Seed resolution: --seed on the command, else the group-level --seed, else
the FEWSEG_SEED environment variable, else 0.
"""

from __future__ import annotations

import os
import sys

import click
import httpx

from .fileio import (
    StimulusDocument,
    atomic_write,
    dumps_graph,
    dumps_paths,
    dumps_tree,
    load_graph_file,
    load_paths_file,
    load_tree_file,
)
from .model import AlgorithmError, InputError
from .schemas import GraphPayload, TreePayload

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_ALGORITHM = 3

TREE_ALGOS = ("tidier", "quad", "fewsegments")
GRAPH_ALGOS = ("forcedir", "fdfewseg")


class _Client:
    """HTTP client against the service; in-process unless --server is set."""

    def __init__(self, server: str | None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=300.0)
        else:
            # Sync client over the ASGI app, no sockets involved. The
            # import-time httpx advisory is noise for this use.
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from starlette.testclient import TestClient

            from .service import app

            self._client = TestClient(app, raise_server_exceptions=False)

    def post(self, path: str, payload: dict) -> httpx.Response:
        resp = self._client.post(path, json=payload)
        if resp.status_code >= 400:
            detail = {}
            try:
                detail = resp.json().get("detail", {})
            except Exception:
                pass
            if isinstance(detail, dict) and detail.get("category") == "algorithmic":
                raise AlgorithmError(detail.get("message", resp.text))
            message = detail.get("message") if isinstance(detail, dict) else None
            raise InputError(message or resp.text)
        return resp


class _Context:
    def __init__(self, client: _Client, seed: int | None, fmt: str | None):
        self.client = client
        self.seed = seed
        self.fmt = fmt

    def resolve_seed(self, seed: int | None) -> int:
        """--seed on the command, else the group, else FEWSEG_SEED, else 0."""
        if seed is not None:
            return seed
        if self.seed is not None:
            return self.seed
        env = os.environ.get("FEWSEG_SEED")
        if env is not None:
            try:
                return int(env)
            except ValueError as exc:
                raise InputError(f"FEWSEG_SEED is not an integer: {env!r}") from exc
        return 0

    def check_format(self, command: str, allowed: tuple[str, ...]) -> str | None:
        if self.fmt is not None and self.fmt not in allowed:
            raise click.UsageError(
                f"--format {self.fmt} is not supported by '{command}'"
                + (f" (supported: {', '.join(allowed)})" if allowed else "")
            )
        return self.fmt


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        click.echo(text, nl=False)


class _Group(click.Group):
    def main(self, *args, **kwargs):
        kwargs.setdefault("standalone_mode", False)
        try:
            return super().main(*args, **kwargs)
        except click.UsageError as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            sys.exit(EXIT_USAGE)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except AlgorithmError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_ALGORITHM)


@click.group(cls=_Group)
@click.option("--server", default=None, help="URL of a running fewseg service.")
@click.option("--seed", type=int, default=None,
              help="Default seed for all commands (FEWSEG_SEED also works).")
@click.option("--format", "fmt", type=click.Choice(["json", "svg", "csv"]),
              default=None, help="Output format where a command supports several.")
@click.pass_context
def cli(ctx, server, seed, fmt):
    """Graph layout engine: generate, layout, render, metrics, paths."""
    ctx.obj = _Context(_Client(server), seed, fmt)


@cli.group()
def generate():
    """Generate stimulus trees and graphs."""


@generate.command("tree")
@click.option("--size", type=click.Choice(["1", "2"]), default="1", show_default=True)
@click.option(
    "--depth-class",
    type=click.Choice(["deep", "balanced", "wide"]),
    default="balanced",
    show_default=True,
)
@click.option("--seed", type=int, default=None, help="Defaults to FEWSEG_SEED or 0.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def generate_tree(obj: _Context, size, depth_class, seed, out):
    """Random tree of the given size/depth class (rejection sampled)."""
    obj.check_format("generate tree", ())
    seed = obj.resolve_seed(seed)
    resp = obj.client.post(
        "/generate/tree",
        {"size_class": int(size), "depth_class": depth_class, "seed": seed},
    )
    body = resp.json()
    tree = TreePayload(**body["tree"]).to_tree()
    _emit(dumps_tree(tree), out)
    click.echo(f"seed={seed} n={tree.n} depth={body['depth']}", err=True)


@generate.command("graph")
@click.option("--size", type=click.Choice(["1", "2"]), default="1", show_default=True)
@click.option(
    "--type", "type_class", type=click.Choice(["random", "rome"]), default="random",
    show_default=True,
)
@click.option("--seed", type=int, default=None)
@click.option("--nodes", type=int, default=None, help="Override node count.")
@click.option("--edges", type=int, default=None, help="Override edge count.")
@click.option("--rome-dir", type=click.Path(exists=True, file_okay=False), default=None,
              help="Directory of ROME-style graph files (required for --type rome).")
@click.option("--size-tol", type=int, default=0, show_default=True,
              help="Accept ROME graphs within this distance of the target size.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def generate_graph(obj: _Context, size, type_class, seed, nodes, edges, rome_dir, size_tol, out):
    """Random connected sparse graph, or a sampled ROME-library file."""
    obj.check_format("generate graph", ())
    seed = obj.resolve_seed(seed)
    if type_class == "rome":
        graph = _sample_rome(rome_dir, int(size), size_tol, seed)
        _emit(dumps_graph(graph), out)
        click.echo(f"seed={seed} n={graph.n} m={len(graph.edges)}", err=True)
        return
    payload = {"size_class": int(size), "seed": seed}
    if nodes is not None or edges is not None:
        payload.update({"n": nodes, "m": edges})
    resp = obj.client.post("/generate/graph", payload)
    graph = GraphPayload(**resp.json()["graph"]).to_graph()
    _emit(dumps_graph(graph), out)
    click.echo(f"seed={seed} n={graph.n} m={len(graph.edges)}", err=True)


def _sample_rome(rome_dir, size, tol, seed):
    import numpy as np

    from .generators import SIZE_NODES

    if rome_dir is None:
        raise InputError("--type rome requires --rome-dir")
    target = SIZE_NODES[size]
    candidates = []
    for name in sorted(os.listdir(rome_dir)):
        path = os.path.join(rome_dir, name)
        if not os.path.isfile(path):
            continue
        try:
            g = load_graph_file(path)
        except InputError:
            continue
        if abs(g.n - target) <= tol:
            candidates.append((name, g))
    if not candidates:
        raise AlgorithmError(
            f"no graph with {target}±{tol} vertices under {rome_dir}"
        )
    rng = np.random.default_rng(seed)
    return candidates[int(rng.integers(0, len(candidates)))][1]


@cli.command("layout")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(TREE_ALGOS + GRAPH_ALGOS), required=True)
@click.option("--seed", type=int, default=None)
@click.option("--paths", "paths_file", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Path file for fdfewseg (else paths are selected).")
@click.option("--angular-coefficient", type=float, default=22.5, show_default=True)
@click.option("--quadrants", type=int, default=4, show_default=True)
@click.option("--stretch", type=int, default=2, show_default=True,
              help="Vector stretch budget for fewsegments.")
@click.option("--rounds", type=int, default=5, show_default=True,
              help="Heuristic rounds for fewsegments.")
@click.option("--iterations", type=int, default=500, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def layout_cmd(obj: _Context, input_file, algo, seed, paths_file,
               angular_coefficient, quadrants, stretch, rounds, iterations, out):
    """Lay out a tree or graph file; writes a stimulus JSON document
    (or an SVG directly with --format svg)."""
    fmt = obj.check_format("layout", ("json", "svg")) or "json"
    seed = obj.resolve_seed(seed)
    payload = {
        "algorithm": algo,
        "seed": seed,
        "quad": {"angular_coefficient": angular_coefficient, "quadrants": quadrants},
        "fewseg": {"s": stretch, "heuristic_rounds": rounds},
        "force": {"iterations": iterations},
    }
    if algo in TREE_ALGOS:
        tree = load_tree_file(input_file)
        payload["tree"] = TreePayload.from_tree(tree).model_dump()
    else:
        instance = _load_any(input_file)
        payload["graph"] = GraphPayload.from_graph(instance).model_dump()
        if paths_file is not None:
            payload["paths"] = load_paths_file(paths_file)
    resp = obj.client.post("/layout", payload)
    doc = StimulusDocument.from_json(resp.text)
    if fmt == "svg":
        svg = obj.client.post(
            "/render",
            {"stimulus": {"vertices": doc.vertices, "edges": doc.edges,
                          "metadata": doc.metadata}},
        ).text
        _emit(svg, out)
    else:
        _emit(doc.to_json(), out)


def _load_any(path: str):
    try:
        return load_graph_file(path)
    except InputError:
        return load_tree_file(path).as_graph()


@cli.command("render")
@click.argument("stimulus_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--node-color", default="#1f6fb5", show_default=True)
@click.option("--edge-color", default="#000000", show_default=True)
@click.option("--halo-color", default="#ffffff", show_default=True)
@click.option("--selected-nodes", default="", help="Comma-separated vertex ids.")
@click.option("--selectable-nodes", default="", help="Comma-separated vertex ids.")
@click.option("--selected-edges", default="", help="Comma-separated u-v pairs.")
@click.option("--selectable-edges", default="", help="Comma-separated u-v pairs.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def render_cmd(obj: _Context, stimulus_file, node_color, edge_color, halo_color,
               selected_nodes, selectable_nodes, selected_edges, selectable_edges, out):
    """Render a stimulus JSON document to SVG."""
    obj.check_format("render", ("svg",))
    with open(stimulus_file, encoding="utf-8") as fh:
        doc = StimulusDocument.from_json(fh.read(), stimulus_file)
    payload = {
        "stimulus": {"vertices": doc.vertices, "edges": doc.edges, "metadata": doc.metadata},
        "node_color": node_color,
        "edge_color": edge_color,
        "halo_color": halo_color,
        "selected_nodes": _int_list(selected_nodes),
        "selectable_nodes": _int_list(selectable_nodes),
        "selected_edges": _pair_list(selected_edges),
        "selectable_edges": _pair_list(selectable_edges),
    }
    resp = obj.client.post("/render", payload)
    _emit(resp.text, out)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad vertex list {text!r}") from exc


def _pair_list(text: str) -> list[tuple[int, int]]:
    text = text.strip()
    if not text:
        return []
    pairs = []
    for tok in text.split(","):
        parts = tok.split("-")
        if len(parts) != 2:
            raise InputError(f"bad edge {tok!r}, expected u-v")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise InputError(f"bad edge {tok!r}") from exc
    return pairs


@cli.command("metrics")
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--algo", "algos", multiple=True,
              type=click.Choice(TREE_ALGOS + GRAPH_ALGOS), required=True)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def metrics_cmd(obj: _Context, corpus_dir, algos, seed, out):
    """Evaluate every .tree/.el/.graphml file in a directory."""
    obj.check_format("metrics", ("csv",))
    seed = obj.resolve_seed(seed)
    instances = []
    for name in sorted(os.listdir(corpus_dir)):
        path = os.path.join(corpus_dir, name)
        if not os.path.isfile(path):
            continue
        if name.endswith(".tree"):
            tree = load_tree_file(path)
            instances.append(
                {"instance_id": name, "tree": TreePayload.from_tree(tree).model_dump()}
            )
        elif name.endswith((".el", ".graphml")):
            graph = load_graph_file(path)
            instances.append(
                {"instance_id": name, "graph": GraphPayload.from_graph(graph).model_dump()}
            )
    resp = obj.client.post(
        "/metrics", {"instances": instances, "algorithms": list(algos), "seed": seed}
    )
    _emit(resp.text, out)


@cli.command("paths")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=None)
@click.option("--max-turn", type=float, default=45.0, show_default=True,
              help="Maximum turn angle (degrees) inside a selected path.")
@click.option("--min-len", type=int, default=2, show_default=True,
              help="Minimum path length in edges.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def paths_cmd(obj: _Context, graph_file, seed, max_turn, min_len, out):
    """Select constraint paths from a ForceDir base drawing."""
    obj.check_format("paths", ())
    seed = obj.resolve_seed(seed)
    graph = _load_any(graph_file)
    resp = obj.client.post(
        "/paths",
        {
            "graph": GraphPayload.from_graph(graph).model_dump(),
            "seed": seed,
            "max_turn": max_turn,
            "min_len": min_len,
        },
    )
    _emit(dumps_paths(resp.json()["paths"]), out)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
