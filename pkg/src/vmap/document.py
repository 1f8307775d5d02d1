"""The serializable layout artifact: schema, export, and import.

A layout document captures everything a viewer or query service needs:
adjusted vertex rects with their weight and area proportions, graph edges,
bridges, the corridor network, optional precomputed ego channels, the metrics
report, and render hints. Exporting and re-importing reproduces the geometry
bit-for-bit (floats round-trip through JSON exactly).
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

from vmap.border import Bridge
from vmap.geometry import Rect
from vmap.graph import VertexWeightedGraph, build_graph
from vmap.metrics import MetricsReport
from vmap.partition import PartitionNode, leaves
from vmap.routing import CorridorNetwork, RoutedChannel

DOCUMENT_VERSION = 1

# 12-color qualitative palette; clusters beyond 12 cycle through darkened variants.
DEFAULT_PALETTE = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
)

LAYOUT_DOCUMENT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "LayoutDocument",
    "type": "object",
    "required": [
        "version", "display", "border_width", "desired_ratio",
        "vertices", "edges", "bridges", "network", "metrics", "render",
    ],
    "properties": {
        "version": {"type": "integer"},
        "display": {"$ref": "#/$defs/rect"},
        "border_width": {"type": "number", "exclusiveMinimum": 0},
        "desired_ratio": {"type": "number", "minimum": 1},
        "vertices": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "label", "cluster", "rect", "alpha", "area_proportion"],
                "properties": {
                    "id": {"type": "string"},
                    "label": {"type": "string"},
                    "cluster": {"type": "string"},
                    "rect": {"$ref": "#/$defs/rect"},
                    "alpha": {"type": "number", "exclusiveMinimum": 0},
                    "area_proportion": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        },
        "bridges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["a", "b", "rect", "axis"],
                "properties": {
                    "a": {"type": "string"},
                    "b": {"type": "string"},
                    "rect": {"$ref": "#/$defs/rect"},
                    "axis": {"enum": ["horizontal", "vertical"]},
                },
            },
        },
        "network": {
            "type": "object",
            "required": ["nodes", "kinds", "edges", "anchors"],
            "properties": {
                "nodes": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
                "kinds": {"type": "array", "items": {"type": "string"}},
                "edges": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
                "anchors": {"type": "object"},
            },
        },
        "ego_channels": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"$ref": "#/$defs/channel"}},
        },
        "metrics": {
            "type": "object",
            "required": [
                "areal_error", "lost_edges", "fake_edges", "topological_error",
                "amended_topological_error", "aspect_ratio_loss", "total_cost",
            ],
        },
        "render": {
            "type": "object",
            "required": ["palette", "display_px"],
            "properties": {
                "palette": {"type": "array", "items": {"type": "string"}},
                "display_px": {"type": "array", "items": {"type": "number"}},
            },
        },
    },
    "$defs": {
        "rect": {
            "type": "object",
            "required": ["x", "y", "w", "h"],
            "properties": {
                "x": {"type": "number"},
                "y": {"type": "number"},
                "w": {"type": "number", "exclusiveMinimum": 0},
                "h": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "channel": {
            "type": "object",
            "required": ["source", "target", "polyline", "length"],
            "properties": {
                "source": {"type": "string"},
                "target": {"type": "string"},
                "polyline": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
                "length": {"type": "number", "minimum": 0},
            },
        },
    },
}


def rect_to_dict(rect: Rect) -> dict[str, float]:
    return {"x": rect.x, "y": rect.y, "w": rect.w, "h": rect.h}


def rect_from_dict(data: Mapping[str, float]) -> Rect:
    return Rect(float(data["x"]), float(data["y"]), float(data["w"]), float(data["h"]))


def channel_to_dict(channel: RoutedChannel) -> dict[str, Any]:
    return {
        "source": channel.source,
        "target": channel.target,
        "polyline": [[x, y] for x, y in channel.polyline],
        "length": channel.length,
    }


def channel_from_dict(data: Mapping[str, Any]) -> RoutedChannel:
    return RoutedChannel(
        source=str(data["source"]),
        target=str(data["target"]),
        polyline=tuple((float(x), float(y)) for x, y in data["polyline"]),
        length=float(data["length"]),
    )


def build_layout_document(
    graph: VertexWeightedGraph,
    proportions: Sequence[float],
    adjusted: PartitionNode,
    display: Rect,
    border_width: float,
    desired_ratio: float,
    bridge_list: Sequence[Bridge],
    network: CorridorNetwork,
    report: MetricsReport,
    ego_channels: Mapping[str, Sequence[RoutedChannel]] | None = None,
    display_px: tuple[float, float] | None = None,
) -> dict[str, Any]:
    rect_of = {leaf.item_id: leaf.rect for leaf in leaves(adjusted)}
    total_area = sum(r.area for r in rect_of.values())
    if display_px is None:
        display_px = (1200.0, 1200.0 * display.h / display.w)

    vertices = []
    for v, alpha in zip(graph.vertices, proportions):
        rect = rect_of[v.id]
        vertices.append(
            {
                "id": v.id,
                "label": v.label,
                "cluster": v.cluster,
                "rect": rect_to_dict(rect),
                "alpha": float(alpha),
                "area_proportion": rect.area / total_area,
            }
        )

    doc: dict[str, Any] = {
        "version": DOCUMENT_VERSION,
        "display": rect_to_dict(display),
        "border_width": border_width,
        "desired_ratio": desired_ratio,
        "vertices": vertices,
        "edges": sorted(sorted(e) for e in graph.edges),
        "bridges": [
            {"a": b.a, "b": b.b, "rect": rect_to_dict(b.rect), "axis": b.axis}
            for b in bridge_list
        ],
        "network": network.as_dict(),
        "metrics": report.as_dict(),
        "render": {"palette": list(DEFAULT_PALETTE), "display_px": list(display_px)},
    }
    if ego_channels is not None:
        doc["ego_channels"] = {
            vid: [channel_to_dict(c) for c in channels]
            for vid, channels in sorted(ego_channels.items())
        }
    return doc


def dumps_document(doc: Mapping[str, Any]) -> str:
    """Canonical serialization: stable key order, full float precision."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def layout_from_document(doc: Mapping[str, Any]) -> tuple[VertexWeightedGraph, dict[str, Rect], CorridorNetwork]:
    """Reconstruct the queryable pieces of a document: graph, rects, network."""
    vertices = [
        (v["id"], v["label"], float(v["alpha"]), v["cluster"]) for v in doc["vertices"]
    ]
    graph = build_graph(vertices, [(a, b) for a, b in doc["edges"]])
    rects = {v["id"]: rect_from_dict(v["rect"]) for v in doc["vertices"]}
    network = CorridorNetwork.from_dict(doc["network"])
    return graph, rects, network


def cluster_color(doc: Mapping[str, Any], cluster: str) -> str:
    """Palette color of a cluster; beyond the palette, cycle with darkening."""
    clusters: list[str] = []
    for v in doc["vertices"]:
        if v["cluster"] not in clusters:
            clusters.append(v["cluster"])
    palette = doc["render"]["palette"]
    index = clusters.index(cluster)
    base = palette[index % len(palette)]
    rounds = index // len(palette)
    if rounds == 0:
        return base
    # darken by 25% per cycle
    r = int(base[1:3], 16)
    g = int(base[3:5], 16)
    b = int(base[5:7], 16)
    factor = 0.75**rounds
    return f"#{int(r * factor):02x}{int(g * factor):02x}{int(b * factor):02x}"


def metrics_csv(doc: Mapping[str, Any]) -> str:
    """One-row CSV export of the document's metric report."""
    metrics = doc["metrics"]
    header = ",".join(metrics)
    values = ",".join(str(metrics[k]) for k in metrics)
    return header + "\n" + values + "\n"
