"""Shared fixtures and independent oracles used across the test suite."""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np
import pytest

from vmap.geometry import Rect
from vmap.graph import VertexWeightedGraph, build_graph
from vmap.partition import PartitionItem, dar_partition


@pytest.fixture
def chain_graph() -> VertexWeightedGraph:
    return build_graph(
        [("a", "a", 1.0, None), ("b", "b", 1.0, None), ("c", "c", 1.0, None)],
        [("a", "b"), ("b", "c")],
    )


def random_graph(rng: np.random.Generator, n: int, p: float) -> VertexWeightedGraph:
    ids = [f"v{i}" for i in range(n)]
    vertices = [(vid, vid, float(rng.uniform(0.5, 5.0)), None) for vid in ids]
    edges = []
    for a, b in itertools.combinations(ids, 2):
        if rng.random() < p:
            edges.append((a, b))
    return build_graph(vertices, edges)


def random_items(rng: np.random.Generator, n: int, sigma: float = 1.0) -> list[PartitionItem]:
    weights = rng.lognormal(0.0, sigma, n)
    weights = weights / weights.sum()
    return [
        PartitionItem(f"p{i}", float(weights[i]), float(rng.random()), float(rng.random()))
        for i in range(n)
    ]


def random_tree(rng: np.random.Generator, n: int, rect: Rect | None = None, sigma: float = 0.6):
    """Random partition tree via DAR on random inputs."""
    if rect is None:
        rect = Rect(0.0, 0.0, 1.0, 1.0)
    return dar_partition(rect, random_items(rng, n, sigma), 1.5)


# --- independent oracles -------------------------------------------------------


def brute_force_contacts(rects: dict[str, Rect], tol: float) -> frozenset[frozenset[str]]:
    """O(n^2) pairwise closed-rect intersection test, interval arithmetic only."""
    out = set()
    ids = list(rects)
    for a, b in itertools.combinations(ids, 2):
        ra, rb = rects[a], rects[b]
        x_ok = ra.x <= rb.x2 + tol and rb.x <= ra.x2 + tol
        y_ok = ra.y <= rb.y2 + tol and rb.y <= ra.y2 + tol
        if x_ok and y_ok:
            out.add(frozenset((a, b)))
    return frozenset(out)


def bfs_depth(edges: frozenset[frozenset[str]], start: str, goal: str) -> int | None:
    """Hop count of the shortest path, or None when unreachable."""
    adj: dict[str, set[str]] = {}
    for e in edges:
        a, b = tuple(e)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            return seen[cur]
        for nxt in adj.get(cur, ()):
            if nxt not in seen:
                seen[nxt] = seen[cur] + 1
                queue.append(nxt)
    return seen.get(goal)


def dijkstra_oracle(
    nodes: list[tuple[float, float]],
    edges: list[tuple[int, int, float]],
    sources: list[int],
    targets: list[int],
) -> float | None:
    """Array-based Dijkstra (no heap) — deliberately different machinery from
    the library's implementation."""
    n = len(nodes)
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for i, j, w in edges:
        adj[i].append((j, w))
        adj[j].append((i, w))
    dist = [float("inf")] * n
    for s in sources:
        dist[s] = 0.0
    done = [False] * n
    for _ in range(n):
        best, best_d = -1, float("inf")
        for i in range(n):
            if not done[i] and dist[i] < best_d:
                best, best_d = i, dist[i]
        if best < 0:
            break
        done[best] = True
        for j, w in adj[best]:
            if dist[best] + w < dist[j]:
                dist[j] = dist[best] + w
    result = min(dist[t] for t in targets)
    return None if result == float("inf") else result
