import warnings
import xml.etree.ElementTree as ET

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from starlette.testclient import TestClient

from fewseg.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app, raise_server_exceptions=False)


def test_healthz(client):
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_generate_tree_matches_depth_class(client):
    resp = client.post(
        "/generate/tree", json={"size_class": 1, "depth_class": "wide", "seed": 7}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["depth"] == 3
    assert body["tree"]["n"] == 20
    assert len(body["tree"]["edges"]) == 19


def test_generate_graph_counts(client):
    resp = client.post("/generate/graph", json={"size_class": 2, "seed": 7})
    body = resp.json()
    assert body["graph"]["n"] == 40
    assert len(body["graph"]["edges"]) == 60


def test_generate_graph_custom_size(client):
    resp = client.post("/generate/graph", json={"seed": 1, "n": 8, "m": 10})
    assert resp.json()["graph"]["n"] == 8


def test_layout_each_tree_algorithm(client):
    tree = client.post(
        "/generate/tree", json={"size_class": 1, "depth_class": "balanced", "seed": 3}
    ).json()["tree"]
    for algo in ("tidier", "quad", "fewsegments"):
        resp = client.post("/layout", json={"algorithm": algo, "tree": tree, "seed": 3})
        assert resp.status_code == 200, resp.text
        body = resp.json()
        assert len(body["vertices"]) == 20
        assert body["metadata"]["layout"] == algo


def test_layout_force_algorithms(client):
    graph = client.post("/generate/graph", json={"size_class": 1, "seed": 3}).json()[
        "graph"
    ]
    for algo in ("forcedir", "fdfewseg"):
        resp = client.post(
            "/layout",
            json={"algorithm": algo, "graph": graph, "seed": 3, "force": {"iterations": 60}},
        )
        assert resp.status_code == 200, resp.text
        assert len(resp.json()["edges"]) == 30


def test_layout_requires_matching_input(client):
    resp = client.post("/layout", json={"algorithm": "tidier", "seed": 0})
    assert resp.status_code == 422
    assert resp.json()["detail"]["category"] == "input"


def test_layout_rejects_invalid_paths(client):
    graph = {"n": 3, "edges": [(1, 2), (2, 3)]}
    resp = client.post(
        "/layout",
        json={
            "algorithm": "fdfewseg",
            "graph": graph,
            "paths": [[1, 2, 3], [3, 2, 1]],
            "force": {"iterations": 5},
        },
    )
    assert resp.status_code == 422
    assert "not edge-disjoint" in resp.json()["detail"]["message"]


def test_render_returns_svg(client):
    stim = {
        "vertices": [{"id": 1, "x": 0, "y": 0}, {"id": 2, "x": 1, "y": 1}],
        "edges": [{"source": 1, "target": 2}],
        "metadata": {},
    }
    resp = client.post("/render", json={"stimulus": stim})
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("image/svg+xml")
    ET.fromstring(resp.text)


def test_metrics_csv(client):
    tree = client.post(
        "/generate/tree", json={"size_class": 1, "depth_class": "wide", "seed": 1}
    ).json()["tree"]
    resp = client.post(
        "/metrics",
        json={
            "instances": [{"instance_id": "t1", "tree": tree}],
            "algorithms": ["tidier", "fewsegments"],
            "seed": 0,
        },
    )
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("text/csv")
    lines = resp.text.strip().split("\n")
    assert lines[0].startswith("instance_id,layout,segments")
    assert len(lines) == 1 + 2 + 2


def test_paths_endpoint(client):
    graph = client.post("/generate/graph", json={"size_class": 1, "seed": 5}).json()[
        "graph"
    ]
    resp = client.post(
        "/paths", json={"graph": graph, "seed": 5, "force": {"iterations": 120}}
    )
    assert resp.status_code == 200
    for path in resp.json()["paths"]:
        assert len(path) >= 3
