"""Layout document: schema validity, round-tripping, rendering."""

from __future__ import annotations

import json

import jsonschema
import pytest

from vmap.anneal import AnnealParams
from vmap.datasets import builtin
from vmap.document import (
    LAYOUT_DOCUMENT_SCHEMA,
    cluster_color,
    dumps_document,
    layout_from_document,
    metrics_csv,
    rect_from_dict,
)
from vmap.graph import build_graph
from vmap.metrics import CostWeights
from vmap.pipeline import run_layout
from vmap.render import fit_label_px, render_svg


@pytest.fixture(scope="module")
def blood_layout():
    g = builtin("blood")
    params = AnnealParams(ns=48, ni=8, weights=CostWeights(0.5, 0.5, 0.0), seed=3)
    return run_layout(g, params, precompute_ego=True)


@pytest.fixture(scope="module")
def tiny_layout():
    g = build_graph(
        [("a", "alpha", 1, None), ("b", "beta", 1, None)], [("a", "b")]
    )
    params = AnnealParams(ns=8, ni=2, seed=1)
    return run_layout(g, params)


class TestDocument:
    def test_schema_valid(self, blood_layout):
        jsonschema.validate(blood_layout.document, LAYOUT_DOCUMENT_SCHEMA)

    def test_two_vertex_document(self, tiny_layout):
        doc = tiny_layout.document
        jsonschema.validate(doc, LAYOUT_DOCUMENT_SCHEMA)
        assert len(doc["vertices"]) == 2
        assert len(doc["bridges"]) <= 1

    def test_every_vertex_once(self, blood_layout):
        ids = [v["id"] for v in blood_layout.document["vertices"]]
        assert sorted(ids) == sorted(set(ids))
        assert len(ids) == 8

    def test_round_trip_bit_exact(self, blood_layout):
        doc = blood_layout.document
        text = dumps_document(doc)
        parsed = json.loads(text)
        assert parsed == doc
        assert dumps_document(parsed) == text

    def test_round_trip_geometry(self, blood_layout):
        doc = json.loads(dumps_document(blood_layout.document))
        graph, rects, network = layout_from_document(doc)
        assert sorted(graph.vertex_ids) == sorted(v["id"] for v in doc["vertices"])
        for v in doc["vertices"]:
            assert rects[v["id"]] == rect_from_dict(v["rect"])
        assert network.nodes == blood_layout.network.nodes
        assert network.edges == blood_layout.network.edges

    def test_area_proportions_match_alpha(self, blood_layout):
        # weight perturbation ran, but the adjusted areas must match the
        # tree's own alpha shares, and both sum to one
        doc = blood_layout.document
        total = sum(v["area_proportion"] for v in doc["vertices"])
        assert total == pytest.approx(1.0)

    def test_metrics_csv(self, blood_layout):
        text = metrics_csv(blood_layout.document)
        header, row = text.strip().split("\n")
        assert "areal_error" in header
        assert len(header.split(",")) == len(row.split(","))

    def test_cluster_color_cycles_with_darkening(self):
        doc = {
            "vertices": [{"id": f"v{i}", "cluster": f"c{i}"} for i in range(15)],
            "render": {"palette": ["#808080", "#ffffff"], "display_px": [100, 100]},
        }
        assert cluster_color(doc, "c0") == "#808080"
        assert cluster_color(doc, "c1") == "#ffffff"
        assert cluster_color(doc, "c2") == "#606060"  # darkened cycle
        assert cluster_color(doc, "c4") == "#484848"


class TestRenderSvg:
    def test_structure_and_counts(self, blood_layout):
        doc = blood_layout.document
        svg = render_svg(doc)
        assert svg.startswith("<svg")
        assert svg.rstrip().endswith("</svg>")
        # one backdrop + one rect per vertex + two halves per bridge
        assert svg.count("<rect") == 1 + len(doc["vertices"]) + 2 * len(doc["bridges"])
        assert svg.count("<polyline") == 0

    def test_channel_overlay(self, blood_layout):
        doc = blood_layout.document
        channels = doc["ego_channels"]["O-"]
        svg = render_svg(doc, channels=channels)
        assert svg.count("<polyline") == len(channels)

    def test_single_vertex_graph(self):
        g = build_graph([("solo", "solo", 1, None)], [])
        params = AnnealParams(ns=4, ni=1, seed=0)
        res = run_layout(g, params)
        svg = render_svg(res.document)
        assert svg.count("<rect") == 2  # backdrop + the one vertex
        assert "solo" in svg

    def test_label_fitting_rules(self):
        assert fit_label_px("ab", 1000.0) == pytest.approx(24.0, abs=0.1)
        assert fit_label_px("abcdefgh", 20.0) is None  # below 6px -> hidden
        mid = fit_label_px("abcdefgh", 60.0)
        assert mid is not None and 6.0 <= mid <= 24.0
        assert fit_label_px("", 100.0) is None

    def test_label_escaping(self, tiny_layout):
        doc = json.loads(dumps_document(tiny_layout.document))
        doc["vertices"][0]["label"] = 'a<b>&"c'
        svg = render_svg(doc)
        assert "a&lt;b&gt;&amp;&quot;c" in svg

    def test_no_leaf_rect_overlap(self, blood_layout):
        doc = blood_layout.document
        rects = [rect_from_dict(v["rect"]) for v in doc["vertices"]]
        for i in range(len(rects)):
            for j in range(i + 1, len(rects)):
                a, b = rects[i], rects[j]
                overlap_x = min(a.x2, b.x2) - max(a.x, b.x)
                overlap_y = min(a.y2, b.y2) - max(a.y, b.y)
                assert min(overlap_x, overlap_y) <= 1e-12
