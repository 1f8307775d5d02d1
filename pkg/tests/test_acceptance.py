"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. The optional full-scale optimization run is gated behind the
VMAP_FULL_NS environment variable (it takes minutes).
"""

from __future__ import annotations

import itertools
import json
import math
import os
import time

import numpy as np
import pytest

from conftest import brute_force_contacts, random_items
from vmap.anneal import AnnealParams, accept, cooling_schedule, optimize
from vmap.bench import bench_aspect_ratio, bench_optimize
from vmap.border import adjust_tree, bridges
from vmap.datasets import builtin
from vmap.document import dumps_document
from vmap.errors import BorderTooWideError
from vmap.geometry import Rect, aspect_ratio
from vmap.graph import normalize_weights
from vmap.metrics import CostWeights, areal_error, contact_tolerance, contacts
from vmap.partition import (
    HORIZONTAL,
    VERTICAL,
    InternalNode,
    aspect_ratio_loss,
    dar_partition,
    leaf_rects,
    leaves,
)
from vmap.pipeline import run_layout
from vmap.routing import build_corridor_network, ego_network, route_query


def report(number: int, message: str) -> None:
    print(f"\n[acceptance] criterion {number}: PASS — {message}")


def test_criterion_01_proportion_preservation():
    rng = np.random.default_rng(1001)
    start = time.perf_counter()
    trees = []
    for _ in range(500):
        n = int(rng.integers(10, 201))
        trees.append(dar_partition(Rect(0, 0, 1, 1), random_items(rng, n, sigma=0.6), 1.5))
    checked = 0
    worst = 0.0
    for tree in trees:
        alphas = np.array([leaf.alpha for leaf in leaves(tree)])
        for d in (0.001, 0.005, 0.01, 0.02):
            try:
                adjusted = adjust_tree(tree, d)
            except BorderTooWideError:
                continue  # infeasible width for this tree; contract rejects it
            checked += 1
            areas = np.array([leaf.rect.area for leaf in leaves(adjusted)])
            rel = np.abs(areas / areas.sum() - alphas) / alphas
            worst = max(worst, float(rel.max()))
    elapsed = time.perf_counter() - start
    assert checked >= 500, f"only {checked} feasible (tree, d) combinations"
    assert worst < 1e-9, f"worst relative proportion deviation {worst:.3e}"
    assert elapsed < 30.0, f"took {elapsed:.1f}s (budget 30s)"
    report(1, f"{checked} adjustments, worst relative deviation {worst:.2e}, {elapsed:.1f}s")


def test_criterion_02_dar_zero_areal_error():
    rng = np.random.default_rng(1002)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 51))
        items = random_items(rng, n)
        tree = dar_partition(Rect(0, 0, 1.5, 1.0), items, 1.5)
        err = areal_error(
            [it.weight for it in items], leaf_rects(tree), [it.id for it in items]
        )
        worst = max(worst, err)
    assert worst < 1e-9
    report(2, f"1000 partitions, worst areal error {worst:.2e}")


def test_criterion_03_table1_reproduction():
    start = time.perf_counter()
    result = bench_aspect_ratio(trials=1000, n=100, ratio=1.5, seed=2024)
    elapsed = time.perf_counter() - start
    assert abs(result.dar_mean - 1.1111) <= 0.10, f"DAR mean {result.dar_mean:.4f}"
    assert abs(result.sew_mean - 1.3303) <= 0.10, f"SEW mean {result.sew_mean:.4f}"
    assert result.dar_mean < result.sew_mean
    assert elapsed < 120.0, f"took {elapsed:.1f}s (budget 120s)"
    report(
        3,
        f"DAR {result.dar_mean:.4f}±{result.dar_std:.4f}, "
        f"SEW {result.sew_mean:.4f}±{result.sew_std:.4f}, {elapsed:.1f}s",
    )


def test_criterion_04_cut_optimality_oracle():
    rng = np.random.default_rng(1004)
    rect = Rect(0, 0, 1.5, 1.0)
    r = 1.5
    for _ in range(200):
        n = int(rng.integers(2, 6))
        items = random_items(rng, n)
        tree = dar_partition(rect, items, r)
        assert isinstance(tree, InternalNode)
        chosen_axis = tree.axis
        chosen_k = len(list(leaves(tree.left))) - 1
        chosen_loss = aspect_ratio_loss([tree.left.rect, tree.right.rect], r)

        best = None
        for axis in (HORIZONTAL, VERTICAL):
            key = (lambda it: (it.x, it.id)) if axis == HORIZONTAL else (lambda it: (it.y, it.id))
            ordered = sorted(items, key=key)
            total = sum(it.weight for it in ordered)
            for k in range(n - 1):
                frac = sum(it.weight for it in ordered[: k + 1]) / total
                if axis == HORIZONTAL:
                    r1 = Rect(rect.x, rect.y, rect.w * frac, rect.h)
                    r2 = Rect(r1.x2, rect.y, rect.w - r1.w, rect.h)
                else:
                    r1 = Rect(rect.x, rect.y, rect.w, rect.h * frac)
                    r2 = Rect(rect.x, r1.y2, rect.w, rect.h - r1.h)
                loss = (abs(aspect_ratio(r1) - r) + abs(aspect_ratio(r2) - r)) / 2
                cand = (loss, 0 if axis == HORIZONTAL else 1, k)
                if best is None or cand < best:
                    best = cand
        assert (chosen_axis, chosen_k) == (HORIZONTAL if best[1] == 0 else VERTICAL, best[2])
        assert chosen_loss == pytest.approx(best[0], abs=1e-12)
    report(4, "200 instances, root (orientation, cut) matches exhaustive enumeration")


def test_criterion_05_table2_desk_scale():
    start = time.perf_counter()
    result = bench_optimize(
        "blood", CostWeights(0.5, 0.5, 0.0), ns=2048, repeats=5, master_seed=0
    )
    elapsed = time.perf_counter() - start
    best = result.best.report
    total_error = best.areal_error + best.topological_error
    assert total_error <= 0.25, f"best-of-5 total error {total_error:.4f}"
    assert elapsed <= 180.0, f"took {elapsed:.1f}s (budget 180s)"
    report(
        5,
        f"best-of-5 total error {total_error:.2%} "
        f"(lost={best.lost_edges}, fake={best.fake_edges}), {elapsed:.1f}s",
    )


@pytest.mark.skipif(
    not os.environ.get("VMAP_FULL_NS"),
    reason="full-scale run takes minutes; set VMAP_FULL_NS=1 to enable",
)
def test_criterion_05_full_scale_optional():
    result = bench_optimize(
        "blood", CostWeights(0.5, 0.5, 0.0), ns=16384, repeats=5, master_seed=0
    )
    best = result.best.report
    total_error = best.areal_error + best.topological_error
    assert total_error <= 0.20
    report(5, f"full-ns best-of-5 total error {total_error:.2%}")


def test_criterion_06_table3_tradeoff_direction():
    medians = {}
    for lam_t in (0.99, 0.01):
        lam_other = (1 - lam_t) / 2
        result = bench_optimize(
            "blood",
            CostWeights(lam_other, lam_t, lam_other),
            ns=512,
            repeats=5,
            master_seed=42,
        )
        err_t = sorted(r.report.topological_error for r in result.results)
        err_a = sorted(r.report.areal_error for r in result.results)
        medians[lam_t] = (err_t[2], err_a[2])
    assert medians[0.99][0] < medians[0.01][0], "topological error direction"
    assert medians[0.99][1] > medians[0.01][1], "areal error direction"
    report(
        6,
        f"median err_t {medians[0.99][0]:.2%} < {medians[0.01][0]:.2%}; "
        f"median err_a {medians[0.99][1]:.2%} > {medians[0.01][1]:.2%}",
    )


def test_criterion_07_adjacency_oracle():
    rng = np.random.default_rng(1007)
    for _ in range(1000):
        n = int(rng.integers(2, 65))
        items = random_items(rng, n)
        tree = dar_partition(Rect(0, 0, 1.5, 1.0), items, 1.5)
        rects = leaf_rects(tree)
        tol = contact_tolerance(rects)
        assert contacts(rects) == brute_force_contacts(rects, tol)
    report(7, "1000 layouts, contacts() equals pairwise brute force")


def _occlusion_check(channels, rect_arrays, ids, step):
    """Vectorized strict-interior test of channel samples against rects."""
    x1, y1, x2, y2 = rect_arrays
    tol = 1e-9 * float(max(np.max(x2 - x1), np.max(y2 - y1)))
    for channel in channels:
        exempt = {channel.source, channel.target}
        keep = np.array([vid not in exempt for vid in ids])
        samples = []
        poly = channel.polyline
        for (ax, ay), (bx, by) in zip(poly, poly[1:]):
            seg_len = math.hypot(bx - ax, by - ay)
            count = max(2, int(seg_len / step) + 1)
            ts = np.linspace(0.0, 1.0, count + 1)
            samples.append(np.column_stack([ax + (bx - ax) * ts, ay + (by - ay) * ts]))
        pts = np.concatenate(samples)
        inside = (
            (pts[:, 0:1] > x1[None, :] + tol)
            & (pts[:, 0:1] < x2[None, :] - tol)
            & (pts[:, 1:2] > y1[None, :] + tol)
            & (pts[:, 1:2] < y2[None, :] - tol)
        )
        bad = inside & keep[None, :]
        assert not bad.any(), f"channel {channel.source}->{channel.target} enters a rect"


def test_criterion_08_routing_occlusion_and_optimality():
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import dijkstra as scipy_dijkstra

    rng = np.random.default_rng(1008)
    for name in ("netherlands", "les-miserables"):
        graph = builtin(name)
        params = AnnealParams(
            ns=8, ni=8, seed=5, weights=CostWeights(0.5, 0.5, 0.0),
            display=Rect(0.0, 0.0, 1200.0, 800.0),
        )
        result = optimize(graph, params)
        d = min(8.0, 0.2 * min(min(l.rect.w, l.rect.h) for l in leaves(result.tree)))
        adjusted = adjust_tree(result.tree, d)
        network = build_corridor_network(adjusted, d)
        rects = leaf_rects(adjusted)
        ids = sorted(rects)
        rect_arrays = (
            np.array([rects[i].x for i in ids]),
            np.array([rects[i].y for i in ids]),
            np.array([rects[i].x2 for i in ids]),
            np.array([rects[i].y2 for i in ids]),
        )

        # independent oracle: scipy's Dijkstra over the same weighted graph
        n_nodes = len(network.nodes)
        rows = [e[0] for e in network.edges] + [e[1] for e in network.edges]
        cols = [e[1] for e in network.edges] + [e[0] for e in network.edges]
        vals = [e[2] for e in network.edges] * 2
        matrix = coo_matrix((vals, (rows, cols)), shape=(n_nodes, n_nodes)).tocsr()

        all_channels = []
        for v in graph.vertices:
            channels = ego_network(network, graph, v.id)
            assert len(channels) == graph.degree(v.id)
            dist = scipy_dijkstra(matrix, indices=network.anchors[v.id])
            for channel in channels:
                oracle = float(dist[:, network.anchors[channel.target]].min())
                assert channel.length == pytest.approx(oracle, rel=1e-9)
            all_channels.extend(channels)

        # a sample of multi-hop path queries
        for _ in range(10):
            a, b = rng.choice(graph.vertex_ids, size=2, replace=False)
            hops, channels, _ = route_query(network, graph, str(a), str(b))
            assert len(channels) == len(hops) - 1
            all_channels.extend(channels)

        _occlusion_check(all_channels, rect_arrays, ids, step=1.0)
    report(8, "all ego and path channels occlusion-free; lengths match scipy Dijkstra")


def test_criterion_09_schedule_and_acceptance_frequency():
    rng = np.random.default_rng(1009)
    for _ in range(100):
        ns = int(rng.integers(1, 30000))
        t_ub = float(rng.uniform(1.0, 512.0))
        t_lb = t_ub * float(rng.uniform(1e-7, 0.9))
        gamma = cooling_schedule(ns, t_ub, t_lb)
        assert t_ub * gamma**ns == pytest.approx(t_lb, rel=1e-9)

    draw = np.random.default_rng(99)
    trials = 100_000
    hits = sum(accept(0.5, 0.6, 256.0, draw) for _ in range(trials))
    freq = hits / trials
    assert abs(freq - math.exp(-0.1)) <= 0.01
    report(9, f"schedule exact on 100 draws; acceptance frequency {freq:.4f} ~ e^-0.1")


def test_criterion_10_determinism():
    graph = builtin("blood")
    params = AnnealParams(ns=64, ni=8, seed=4321, weights=CostWeights(0.5, 0.5, 0.0))
    first = dumps_document(run_layout(graph, params, precompute_ego=True).document)
    second = dumps_document(run_layout(graph, params, precompute_ego=True).document)
    assert first.encode() == second.encode()
    report(10, f"two runs produced byte-identical documents ({len(first)} bytes)")


def test_criterion_11_dataset_structure():
    expectations = {"blood": (8, 19), "netherlands": (12, 22), "germany": (16, 28)}
    for name, (nv, ne) in expectations.items():
        g = builtin(name)
        assert (len(g.vertices), len(g.edges)) == (nv, ne), name

    # back-solved arithmetic the counts must satisfy
    assert 2 / (22 + 1) == pytest.approx(0.0870, abs=5e-5)  # netherlands best: 1 lost 1 fake
    assert 3 / (22 + 3) == pytest.approx(0.1200, abs=5e-5)  # netherlands ECPA: 3 fake
    assert 2 / 19 == pytest.approx(0.1053, abs=5e-5)  # blood CRUDE/ECPA: 2 lost
    assert 3 / 19 == pytest.approx(0.1579, abs=5e-5)  # blood best: 3 lost
    assert 7 / (28 + 7) == pytest.approx(0.2000, abs=5e-5)  # germany ECPA: 7 fake
    assert (14 + 14) / (28 + 14) == pytest.approx(0.6667, abs=5e-5)  # germany CRUDE
    report(11, "builtin |V|/|E| equal 8/19, 12/22, 16/28; table arithmetic consistent")


def test_bridges_match_unlost_edges_on_netherlands():
    # companion check to criterion 11: every robustly-adjacent unlost edge
    # carries a bridge. Pre-border contacts thinner than a few border widths
    # can be eroded by the adjustment shifts, so those are exempt; bridges
    # never join non-contacting pairs.
    graph = builtin("netherlands")
    params = AnnealParams(ns=256, ni=12, seed=11, weights=CostWeights(0.5, 0.5, 0.0))
    result = run_layout(graph, params)
    doc = result.document
    d = doc["border_width"]

    raw_rects = leaf_rects(result.optimize_result.tree)
    raw_contacts = contacts(raw_rects)
    bridged = {frozenset((b["a"], b["b"])) for b in doc["bridges"]}
    unlost = graph.edges & raw_contacts

    assert bridged <= unlost  # no bridge without a graph edge and a contact
    for edge in unlost:
        a, b = sorted(edge)
        ra, rb = raw_rects[a], raw_rects[b]
        overlap = max(
            min(ra.x2, rb.x2) - max(ra.x, rb.x),
            min(ra.y2, rb.y2) - max(ra.y, rb.y),
        )
        if overlap > 4 * d:  # robust contact: adjustment cannot erase it
            assert edge in bridged, f"robust contact {a}-{b} lost its bridge"
    assert doc["metrics"]["lost_edges"] == len(graph.edges - raw_contacts)
