"""Vertex-weighted graph model: validation, weight proportions, clustering, hop paths.

Graphs are immutable after construction and safe to share across workers.
Edges are undirected and stored as frozensets of two vertex ids.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from vmap.errors import DisconnectedError, GraphValidationError


@dataclass(frozen=True)
class Vertex:
    id: str
    label: str
    weight: float
    cluster: str


@dataclass(frozen=True)
class VertexWeightedGraph:
    vertices: tuple[Vertex, ...]
    edges: frozenset[frozenset[str]]
    # optional embedding seed from the input document
    positions: dict[str, tuple[float, float]] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        by_id = {v.id: v for v in self.vertices}
        adjacency: dict[str, list[str]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adjacency[a].append(b)
            adjacency[b].append(a)
        for vid in adjacency:
            adjacency[vid].sort()
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_adjacency", adjacency)

    @property
    def vertex_ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    @property
    def clusters(self) -> list[str]:
        """Distinct cluster ids in first-appearance order."""
        seen: dict[str, None] = {}
        for v in self.vertices:
            seen.setdefault(v.cluster, None)
        return list(seen)

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._by_id[vid]  # type: ignore[attr-defined]
        except KeyError:
            raise KeyError(f"unknown vertex id {vid!r}") from None

    def __contains__(self, vid: str) -> bool:
        return vid in self._by_id  # type: ignore[attr-defined]

    def neighbors(self, vid: str) -> list[str]:
        """Adjacent vertex ids, sorted for determinism."""
        self.vertex(vid)
        return list(self._adjacency[vid])  # type: ignore[attr-defined]

    def degree(self, vid: str) -> int:
        return len(self.neighbors(vid))


def build_graph(
    vertices: Iterable[tuple[str, str, float, str | None]],
    edges: Iterable[tuple[str, str]],
    positions: Mapping[str, tuple[float, float]] | None = None,
) -> VertexWeightedGraph:
    """Validate and construct a graph from raw tuples.

    Raises GraphValidationError naming the offending element on any violation:
    duplicate id, nonpositive or non-finite weight, self-loop, duplicate edge,
    or dangling edge endpoint. A cluster id on some-but-not-all vertices is
    rejected; no cluster ids at all puts every vertex in one implicit cluster.
    """
    vlist = list(vertices)
    if not vlist:
        raise GraphValidationError("graph has no vertices")

    clustered = [c is not None for (_, _, _, c) in vlist]
    if any(clustered) and not all(clustered):
        missing = next(vid for (vid, _, _, c) in vlist if c is None)
        raise GraphValidationError(f"vertex {missing!r} has no cluster but others do")

    ids: set[str] = set()
    built: list[Vertex] = []
    for vid, label, weight, cluster in vlist:
        if vid in ids:
            raise GraphValidationError(f"duplicate id {vid!r}")
        ids.add(vid)
        weight = float(weight)
        if not (math.isfinite(weight) and weight > 0):
            raise GraphValidationError(f"nonpositive weight {weight!r} on vertex {vid!r}")
        built.append(Vertex(vid, label, weight, cluster if cluster is not None else "_all"))

    eset: set[frozenset[str]] = set()
    for a, b in edges:
        if a == b:
            raise GraphValidationError(f"self-loop on vertex {a!r}")
        for end in (a, b):
            if end not in ids:
                raise GraphValidationError(f"edge endpoint {end!r} is not a vertex")
        key = frozenset((a, b))
        if key in eset:
            raise GraphValidationError(f"duplicate edge {sorted((a, b))}")
        eset.add(key)

    pos = None
    if positions is not None:
        pos = {}
        for vid, xy in positions.items():
            if vid not in ids:
                raise GraphValidationError(f"position given for unknown vertex {vid!r}")
            pos[vid] = (float(xy[0]), float(xy[1]))

    return VertexWeightedGraph(tuple(built), frozenset(eset), pos)


def load_graph(document: Mapping[str, Any]) -> VertexWeightedGraph:
    """Build a graph from a parsed JSON graph document.

    Expected shape:
      {"vertices": [{"id": ..., "label": ..., "weight": ..., "cluster": ...}],
       "edges": [["a", "b"], ...],
       "positions": {"a": [x, y], ...}}   # optional annealer seed
    """
    if "vertices" not in document:
        raise GraphValidationError("document missing 'vertices'")
    raw_vertices = []
    for entry in document["vertices"]:
        if "id" not in entry or "weight" not in entry:
            raise GraphValidationError(f"vertex entry missing id or weight: {entry!r}")
        raw_vertices.append(
            (
                str(entry["id"]),
                str(entry.get("label", entry["id"])),
                entry["weight"],
                entry.get("cluster"),
            )
        )
    raw_edges = [(str(a), str(b)) for a, b in document.get("edges", [])]
    return build_graph(raw_vertices, raw_edges, document.get("positions"))


def normalize_weights(graph: VertexWeightedGraph) -> list[float]:
    """Per-vertex weight proportions, in vertex order; sums to 1."""
    total = sum(v.weight for v in graph.vertices)
    return [v.weight / total for v in graph.vertices]


@dataclass(frozen=True)
class ClusterGraph:
    """Cluster-level aggregation: one node per cluster, weight = member sum."""

    ids: tuple[str, ...]
    weights: tuple[float, ...]  # proportions of the whole graph; sum to 1
    edges: frozenset[frozenset[str]]
    members: dict[str, list[str]] = field(compare=False, default_factory=dict)


def cluster_graph(graph: VertexWeightedGraph, proportions: list[float]) -> ClusterGraph:
    """Aggregate vertices by cluster id.

    A cluster edge exists iff any member edge crosses the two clusters.
    """
    order = graph.clusters
    members: dict[str, list[str]] = {c: [] for c in order}
    weight: dict[str, float] = {c: 0.0 for c in order}
    cluster_of: dict[str, str] = {}
    for v, p in zip(graph.vertices, proportions):
        members[v.cluster].append(v.id)
        weight[v.cluster] += p
        cluster_of[v.id] = v.cluster

    cedges: set[frozenset[str]] = set()
    for e in graph.edges:
        a, b = tuple(e)
        ca, cb = cluster_of[a], cluster_of[b]
        if ca != cb:
            cedges.add(frozenset((ca, cb)))

    return ClusterGraph(
        ids=tuple(order),
        weights=tuple(weight[c] for c in order),
        edges=frozenset(cedges),
        members=members,
    )


def shortest_hop_path(graph: VertexWeightedGraph, a: str, b: str) -> list[str]:
    """Minimal-hop path from a to b as a vertex id sequence.

    Among all minimal-hop paths the lexicographically smallest id sequence is
    returned, so results are deterministic: BFS from b yields remaining-hop
    counts, then the walk from a greedily takes the smallest-id neighbor that
    still decreases the count. Raises DisconnectedError when no path exists.
    """
    if a == b:
        raise ValueError("endpoints must differ")
    graph.vertex(a)
    graph.vertex(b)

    dist = {b: 0}
    queue = deque([b])
    while queue:
        cur = queue.popleft()
        for nxt in graph.neighbors(cur):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)

    if a not in dist:
        raise DisconnectedError(a, b)

    path = [a]
    cur = a
    while cur != b:
        cur = min(n for n in graph.neighbors(cur) if dist.get(n, -1) == dist[cur] - 1)
        path.append(cur)
    return path
