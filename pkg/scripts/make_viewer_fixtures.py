#!/usr/bin/env python3
"""Capture service responses as viewer test fixtures.

Runs the layout pipeline on the blood dataset plus a small disconnected
synthetic graph, then records the exact JSON bodies the query service
returns for /layout, /ego/{id}, and /path/{a}/{b}. The viewer test suite
asserts its overlays byte-for-byte against these.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from vmap.anneal import AnnealParams
from vmap.datasets import builtin
from vmap.document import dumps_document
from vmap.graph import build_graph
from vmap.metrics import CostWeights
from vmap.pipeline import run_layout
from vmap.service import create_app

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def capture(graph, params, stem, ego_ids, path_queries):
    result = run_layout(graph, params, precompute_ego=True)
    document = json.loads(dumps_document(result.document))
    client = TestClient(create_app(document))

    (FIXTURE_DIR / f"{stem}-document.json").write_text(
        client.get("/layout").text + "\n"
    )
    ego = {vid: client.get(f"/ego/{vid}").json() for vid in ego_ids}
    (FIXTURE_DIR / f"{stem}-ego.json").write_text(json.dumps(ego, indent=2) + "\n")
    paths = {}
    for a, b in path_queries:
        response = client.get(f"/path/{a}/{b}")
        paths[f"{a}|{b}"] = {"status": response.status_code, "body": response.json()}
    (FIXTURE_DIR / f"{stem}-paths.json").write_text(json.dumps(paths, indent=2) + "\n")
    print(f"captured {stem}: {len(ego)} ego responses, {len(paths)} path responses")


def main():
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)

    blood = builtin("blood")
    capture(
        blood,
        AnnealParams(ns=48, ni=8, weights=CostWeights(0.5, 0.5, 0.0), seed=3),
        "blood",
        ego_ids=[v.id for v in blood.vertices],
        path_queries=[("O-", "AB+"), ("A+", "B+")],
    )

    synthetic = build_graph(
        [("a", "a", 1, None), ("b", "b", 1, None), ("c", "c", 1, None), ("d", "d", 1, None)],
        [("a", "b"), ("c", "d")],
    )
    capture(
        synthetic,
        AnnealParams(ns=16, ni=4, seed=0),
        "synthetic",
        ego_ids=["a", "c"],
        path_queries=[("a", "b"), ("a", "c")],
    )


if __name__ == "__main__":
    main()
