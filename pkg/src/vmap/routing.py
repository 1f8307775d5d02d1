"""Orthogonal channel routing through the border space of an adjusted layout.

The border corridors form a rectilinear network: one centerline per splitting
band (extended across the enclosing corridors it ends on), a ring centerline
inside the outer frame, and a short stub from each rect side midpoint to the
corridor facing that side. Nodes sit at segment endpoints and crossings;
edges join consecutive nodes along a segment and carry Euclidean length.

Channels between vertices are shortest paths on this network (Dijkstra,
deterministic lexicographic tie-break), anchored at the rects' side
midpoints. A channel never enters any rect except at its two endpoints.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from vmap.errors import DisconnectedError
from vmap.geometry import Rect
from vmap.graph import VertexWeightedGraph, shortest_hop_path
from vmap.partition import HORIZONTAL, InternalNode, LeafNode, PartitionNode, leaves

NODE_RECT_SIDE = "rect-side"
NODE_CORRIDOR = "corridor"


@dataclass(frozen=True)
class RoutedChannel:
    source: str
    target: str
    polyline: tuple[tuple[float, float], ...]
    length: float


@dataclass
class CorridorNetwork:
    nodes: list[tuple[float, float]]
    kinds: list[str]
    edges: list[tuple[int, int, float]]
    anchors: dict[str, list[int]]  # vertex id -> node indices of its side midpoints
    adjacency: dict[int, list[tuple[int, float]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.adjacency:
            adj: dict[int, list[tuple[int, float]]] = {i: [] for i in range(len(self.nodes))}
            for i, j, w in self.edges:
                adj[i].append((j, w))
                adj[j].append((i, w))
            for i in adj:
                adj[i].sort()
            self.adjacency = adj

    def as_dict(self) -> dict:
        return {
            "nodes": [[x, y] for x, y in self.nodes],
            "kinds": list(self.kinds),
            "edges": [[i, j, w] for i, j, w in self.edges],
            "anchors": {k: list(v) for k, v in sorted(self.anchors.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> CorridorNetwork:
        return cls(
            nodes=[(float(x), float(y)) for x, y in data["nodes"]],
            kinds=list(data["kinds"]),
            edges=[(int(i), int(j), float(w)) for i, j, w in data["edges"]],
            anchors={k: [int(i) for i in v] for k, v in data["anchors"].items()},
        )


@dataclass(frozen=True)
class _Seg:
    orientation: str  # "h" | "v"
    fixed: float
    lo: float
    hi: float


def build_corridor_network(adjusted: PartitionNode, d: float) -> CorridorNetwork:
    """Construct the corridor network for a fixed-width adjusted layout."""
    root = adjusted.rect
    # outer frame corridor is d wide; its centerline sits d/2 outside the root box
    left, right = root.x - d / 2.0, root.x2 + d / 2.0
    top, bottom = root.y - d / 2.0, root.y2 + d / 2.0

    segs: list[_Seg] = [
        _Seg("h", top, left, right),
        _Seg("h", bottom, left, right),
        _Seg("v", left, top, bottom),
        _Seg("v", right, top, bottom),
    ]
    anchor_points: list[tuple[str, float, float]] = []  # (vertex id, x, y)

    def walk(node: PartitionNode, bl: float, br: float, bt: float, bb: float) -> None:
        if isinstance(node, LeafNode):
            r = node.rect
            cx, cy = r.center
            anchor_points.extend(
                [
                    (node.item_id, r.x, cy),
                    (node.item_id, r.x2, cy),
                    (node.item_id, cx, r.y),
                    (node.item_id, cx, r.y2),
                ]
            )
            # stubs from the side midpoints to the facing corridor centerlines
            segs.append(_Seg("h", cy, bl, r.x))
            segs.append(_Seg("h", cy, r.x2, br))
            segs.append(_Seg("v", cx, bt, r.y))
            segs.append(_Seg("v", cx, r.y2, bb))
            return
        assert isinstance(node, InternalNode)
        if node.axis == HORIZONTAL:
            x_c = (node.left.rect.x2 + node.right.rect.x) / 2.0
            segs.append(_Seg("v", x_c, bt, bb))
            walk(node.left, bl, x_c, bt, bb)
            walk(node.right, x_c, br, bt, bb)
        else:
            y_c = (node.left.rect.y2 + node.right.rect.y) / 2.0
            segs.append(_Seg("h", y_c, bl, br))
            walk(node.left, bl, br, bt, y_c)
            walk(node.right, bl, br, y_c, bb)

    walk(adjusted, left, right, top, bottom)

    span = max(root.w, root.h)
    tol = 1e-9 * span

    # node set: all segment endpoints, anchor points, and pairwise crossings
    points: dict[tuple[int, int], tuple[float, float, str]] = {}

    def key_of(x: float, y: float) -> tuple[int, int]:
        return (round(x / tol / 16.0), round(y / tol / 16.0))

    def add_point(x: float, y: float, kind: str) -> None:
        k = key_of(x, y)
        prev = points.get(k)
        if prev is None or (prev[2] == NODE_CORRIDOR and kind == NODE_RECT_SIDE):
            points[k] = (x, y, kind)

    for s in segs:
        if s.orientation == "h":
            add_point(s.lo, s.fixed, NODE_CORRIDOR)
            add_point(s.hi, s.fixed, NODE_CORRIDOR)
        else:
            add_point(s.fixed, s.lo, NODE_CORRIDOR)
            add_point(s.fixed, s.hi, NODE_CORRIDOR)
    verticals = [s for s in segs if s.orientation == "v"]
    horizontals = [s for s in segs if s.orientation == "h"]
    for v in verticals:
        for h in horizontals:
            if h.lo - tol <= v.fixed <= h.hi + tol and v.lo - tol <= h.fixed <= v.hi + tol:
                add_point(v.fixed, h.fixed, NODE_CORRIDOR)
    for vid, x, y in anchor_points:
        add_point(x, y, NODE_RECT_SIDE)

    ordered = sorted(points.values(), key=lambda t: (t[0], t[1]))
    index_of = {key_of(x, y): i for i, (x, y, _) in enumerate(ordered)}
    nodes = [(x, y) for x, y, _ in ordered]
    kinds = [kind for _, _, kind in ordered]

    edge_set: set[tuple[int, int]] = set()
    for s in segs:
        if s.orientation == "h":
            on_seg = [
                i
                for i, (x, y) in enumerate(nodes)
                if abs(y - s.fixed) <= tol and s.lo - tol <= x <= s.hi + tol
            ]
            on_seg.sort(key=lambda i: nodes[i][0])
        else:
            on_seg = [
                i
                for i, (x, y) in enumerate(nodes)
                if abs(x - s.fixed) <= tol and s.lo - tol <= y <= s.hi + tol
            ]
            on_seg.sort(key=lambda i: nodes[i][1])
        for a, b in zip(on_seg, on_seg[1:]):
            if a != b:
                edge_set.add((min(a, b), max(a, b)))

    edges = []
    for a, b in sorted(edge_set):
        ax, ay = nodes[a]
        bx, by = nodes[b]
        edges.append((a, b, math.hypot(bx - ax, by - ay)))

    anchors: dict[str, list[int]] = {}
    for vid, x, y in anchor_points:
        anchors.setdefault(vid, []).append(index_of[key_of(x, y)])
    for vid in anchors:
        anchors[vid] = sorted(set(anchors[vid]))

    return CorridorNetwork(nodes=nodes, kinds=kinds, edges=edges, anchors=anchors)


def shortest_channel(network: CorridorNetwork, source: str, target: str) -> RoutedChannel:
    """Shortest network path between any side midpoints of the two rects."""
    src = network.anchors.get(source)
    dst = network.anchors.get(target)
    if not src:
        raise KeyError(f"unknown vertex id {source!r}")
    if not dst:
        raise KeyError(f"unknown vertex id {target!r}")

    # Dijkstra; ties resolve by node index via the (distance, index) heap key
    # and sorted adjacency, so results are deterministic.
    dist: dict[int, float] = {}
    parent: dict[int, int] = {}
    heap: list[tuple[float, int]] = []
    for s in src:
        dist[s] = 0.0
        heapq.heappush(heap, (0.0, s))
    settled: set[int] = set()
    while heap:
        du, u = heapq.heappop(heap)
        if u in settled:
            continue
        settled.add(u)
        for v, w in network.adjacency[u]:
            nd = du + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))

    reached = [t for t in dst if t in dist]
    if not reached:
        raise DisconnectedError(source, target)
    best = min(reached, key=lambda t: (dist[t], t))

    sources = set(src)
    path = [best]
    while path[-1] not in sources:
        path.append(parent[path[-1]])
    path.reverse()
    polyline = tuple(network.nodes[i] for i in path)
    return RoutedChannel(source, target, polyline, dist[best])


def ego_network(
    network: CorridorNetwork, graph: VertexWeightedGraph, v: str
) -> list[RoutedChannel]:
    """One shortest channel from v to each of its graph neighbors."""
    graph.vertex(v)
    return [shortest_channel(network, v, u) for u in graph.neighbors(v)]


def route_query(
    network: CorridorNetwork,
    graph: VertexWeightedGraph,
    a: str,
    b: str,
    mode: str = "hops",
) -> tuple[list[str], list[RoutedChannel], list[str]]:
    """Route a vertex-to-vertex query.

    mode "hops" (default): minimal-hop path in the graph, one channel per
    consecutive hop, plus the in-between vertex ids to highlight.
    mode "geometric": single shortest channel over the corridor network,
    ignoring graph edges.
    """
    if a == b:
        raise ValueError("endpoints must differ")
    if mode == "geometric":
        return [a, b], [shortest_channel(network, a, b)], []
    hops = shortest_hop_path(graph, a, b)
    channels = [shortest_channel(network, u, v) for u, v in zip(hops, hops[1:])]
    return hops, channels, hops[1:-1]


def channel_occludes(
    channel: RoutedChannel,
    rects: dict[str, Rect],
    step: float,
    tol: float = 0.0,
) -> bool:
    """True if any polyline sample lies strictly inside a non-endpoint rect."""
    exempt = {channel.source, channel.target}
    for (x1, y1), (x2, y2) in zip(channel.polyline, channel.polyline[1:]):
        seg_len = math.hypot(x2 - x1, y2 - y1)
        samples = max(2, int(seg_len / step) + 1)
        for k in range(samples + 1):
            t = k / samples
            px, py = x1 + (x2 - x1) * t, y1 + (y2 - y1) * t
            for vid, rect in rects.items():
                if vid in exempt:
                    continue
                if rect.strictly_contains_point(px, py, tol):
                    return True
    return False
