"""End-to-end layout pipeline: optimize, adjust, bridge, route, export."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from vmap.anneal import AnnealParams, OptimizeResult, optimize
from vmap.border import adjust_tree, bridges, feasible_border_width
from vmap.document import build_layout_document
from vmap.geometry import Rect
from vmap.graph import VertexWeightedGraph
from vmap.partition import PartitionNode
from vmap.routing import CorridorNetwork, build_corridor_network, ego_network


@dataclass(frozen=True)
class LayoutResult:
    document: dict[str, Any]
    optimize_result: OptimizeResult
    adjusted: PartitionNode
    network: CorridorNetwork


def run_layout(
    graph: VertexWeightedGraph,
    params: AnnealParams,
    border_width: float | None = None,
    precompute_ego: bool = False,
) -> LayoutResult:
    """Optimize the configuration, open borders, build bridges and corridors,
    and assemble the layout document."""
    result = optimize(graph, params)
    display = params.display if params.display is not None else Rect(0.0, 0.0, params.ratio, 1.0)
    d = border_width if border_width is not None else feasible_border_width(result.tree, display)

    adjusted = adjust_tree(result.tree, d)
    bridge_list = bridges(adjusted, graph, d)
    network = build_corridor_network(adjusted, d)

    ego = None
    if precompute_ego:
        ego = {v.id: ego_network(network, graph, v.id) for v in graph.vertices}

    document = build_layout_document(
        graph=graph,
        proportions=result.config.original.tolist(),
        adjusted=adjusted,
        display=display,
        border_width=d,
        desired_ratio=params.ratio,
        bridge_list=bridge_list,
        network=network,
        report=result.report,
        ego_channels=ego,
    )
    return LayoutResult(document, result, adjusted, network)
