"""Rectangular space-filling maps for vertex-weighted graphs.

Pipeline: a vertex-weighted graph is embedded (randomly or from user
positions), carved into area-faithful rectangles by desired-aspect-ratio
binary space partitioning, post-processed to open fixed-width border
corridors between rectangles, and optimized by simulated annealing that
trades areal error against adjacency preservation and aspect-ratio quality.
Edges travel through the border space as bridges and routed channels.
"""

from vmap.anneal import AnnealParams, LayoutConfiguration, optimize
from vmap.border import adjust_tree, bridges
from vmap.document import build_layout_document, layout_from_document
from vmap.graph import VertexWeightedGraph, load_graph, normalize_weights
from vmap.metrics import CostWeights, MetricsReport
from vmap.partition import PartitionItem, dar_partition, sew_partition, two_level_partition
from vmap.routing import build_corridor_network, ego_network, route_query

__version__ = "0.1.0"

__all__ = [
    "AnnealParams",
    "LayoutConfiguration",
    "optimize",
    "adjust_tree",
    "bridges",
    "build_layout_document",
    "layout_from_document",
    "VertexWeightedGraph",
    "load_graph",
    "normalize_weights",
    "CostWeights",
    "MetricsReport",
    "PartitionItem",
    "dar_partition",
    "sew_partition",
    "two_level_partition",
    "build_corridor_network",
    "ego_network",
    "route_query",
    "__version__",
]
