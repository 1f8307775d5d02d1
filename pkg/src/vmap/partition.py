"""Binary space partitioning of a rectangle into area-faithful leaf rectangles.

Two strategies are provided:

- desired-aspect-ratio (DAR): at every subdivision all n-1 cut positions for
  both orientations are scored by the mean aspect-ratio loss of the two
  candidate sub-rectangles against a target ratio r; the minimum wins.
- scaled equal-weight (SEW) baseline: equal-weight cuts along the longer side
  inside a 1:1 space, then all widths are scaled by r.

Both split extents exactly proportionally to weight sums, so leaf areas carry
zero areal error by construction. Orientation naming follows the convention
that a *horizontal* partitioning places children side by side (the splitting
line is vertical, at an x coordinate) and a *vertical* partitioning stacks
them (splitting line horizontal, at a y coordinate).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from vmap.geometry import Rect, aspect_ratio
from vmap.graph import VertexWeightedGraph, cluster_graph

HORIZONTAL = "horizontal"  # children side by side; split is an x coordinate
VERTICAL = "vertical"  # children stacked; split is a y coordinate


@dataclass(frozen=True)
class PartitionItem:
    id: str
    weight: float  # weight proportion, > 0
    x: float
    y: float

    def __post_init__(self) -> None:
        if not self.weight > 0:
            raise ValueError(f"item {self.id!r} has nonpositive weight {self.weight}")


@dataclass
class LeafNode:
    rect: Rect
    item_id: str
    alpha: float  # this leaf's share of the tree's total weight


@dataclass
class InternalNode:
    rect: Rect
    axis: str  # HORIZONTAL or VERTICAL
    split: float  # x (horizontal) or y (vertical) coordinate of the cut
    left: PartitionNode
    right: PartitionNode


PartitionNode = LeafNode | InternalNode


def leaves(node: PartitionNode) -> Iterator[LeafNode]:
    if isinstance(node, LeafNode):
        yield node
    else:
        yield from leaves(node.left)
        yield from leaves(node.right)


def internal_nodes(node: PartitionNode) -> Iterator[InternalNode]:
    if isinstance(node, InternalNode):
        yield node
        yield from internal_nodes(node.left)
        yield from internal_nodes(node.right)


def leaf_rects(node: PartitionNode) -> dict[str, Rect]:
    return {leaf.item_id: leaf.rect for leaf in leaves(node)}


def aspect_ratio_loss(rects: Sequence[Rect], r: float) -> float:
    """Mean absolute deviation of rect aspect ratios from the target r."""
    if not rects:
        raise ValueError("aspect_ratio_loss of an empty rect list")
    return sum(abs(aspect_ratio(rc) - r) for rc in rects) / len(rects)


def dar_partition(rect: Rect, items: Sequence[PartitionItem], r: float) -> PartitionNode:
    """Recursively partition `rect` among `items` minimizing aspect-ratio loss.

    At each step the candidate cuts of both orientations are scored by the
    mean aspect-ratio loss of the two sub-rects; ties prefer the horizontal
    orientation, then the smallest cut index. Sorting is by coordinate
    ascending with the item id as a stable secondary key.
    """
    if not items:
        raise ValueError("cannot partition zero items")
    w = np.array([it.weight for it in items], dtype=float)
    x = np.array([it.x for it in items], dtype=float)
    y = np.array([it.y for it in items], dtype=float)
    id_rank = _rank_ids([it.id for it in items])
    total = w.sum()
    alphas = w / total
    ids = [it.id for it in items]
    return _dar(rect, np.arange(len(items)), ids, alphas, x, y, id_rank, float(r))


def _rank_ids(ids: Sequence[str]) -> np.ndarray:
    order = sorted(range(len(ids)), key=lambda i: ids[i])
    rank = np.empty(len(ids), dtype=np.int64)
    for pos, i in enumerate(order):
        rank[i] = pos
    return rank


def _pair_loss(w1: np.ndarray, h1: float | np.ndarray, w2: np.ndarray, h2: float | np.ndarray, r: float) -> np.ndarray:
    a1 = np.maximum(w1 / h1, h1 / w1)
    a2 = np.maximum(w2 / h2, h2 / w2)
    return 0.5 * (np.abs(a1 - r) + np.abs(a2 - r))


def _dar(
    rect: Rect,
    idx: np.ndarray,
    ids: list[str],
    alphas: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    id_rank: np.ndarray,
    r: float,
) -> PartitionNode:
    if idx.size == 1:
        i = int(idx[0])
        return LeafNode(rect, ids[i], float(alphas[i]))

    order_h = idx[np.lexsort((id_rank[idx], x[idx]))]
    order_v = idx[np.lexsort((id_rank[idx], y[idx]))]
    total = float(alphas[idx].sum())

    frac_h = np.cumsum(alphas[order_h])[:-1] / total
    w1 = rect.w * frac_h
    loss_h = _pair_loss(w1, rect.h, rect.w - w1, rect.h, r)
    k_h = int(np.argmin(loss_h))

    frac_v = np.cumsum(alphas[order_v])[:-1] / total
    h1 = rect.h * frac_v
    loss_v = _pair_loss(rect.w, h1, rect.w, rect.h - h1, r)
    k_v = int(np.argmin(loss_v))

    if loss_h[k_h] <= loss_v[k_v]:  # tie prefers horizontal
        wl = rect.w * float(frac_h[k_h])
        left_rect = Rect(rect.x, rect.y, wl, rect.h)
        right_rect = Rect(rect.x + wl, rect.y, rect.w - wl, rect.h)
        left = _dar(left_rect, order_h[: k_h + 1], ids, alphas, x, y, id_rank, r)
        right = _dar(right_rect, order_h[k_h + 1 :], ids, alphas, x, y, id_rank, r)
        return InternalNode(rect, HORIZONTAL, rect.x + wl, left, right)
    hl = rect.h * float(frac_v[k_v])
    top_rect = Rect(rect.x, rect.y, rect.w, hl)
    bottom_rect = Rect(rect.x, rect.y + hl, rect.w, rect.h - hl)
    left = _dar(top_rect, order_v[: k_v + 1], ids, alphas, x, y, id_rank, r)
    right = _dar(bottom_rect, order_v[k_v + 1 :], ids, alphas, x, y, id_rank, r)
    return InternalNode(rect, VERTICAL, rect.y + hl, left, right)


def sew_partition(rect: Rect, items: Sequence[PartitionItem], r: float) -> PartitionNode:
    """Scaled equal-weight baseline.

    Partitions a 1:1 square (side = rect.h, anchored at rect's origin) by
    recursively cutting along the longer side at the position where the prefix
    weight sum is closest to half, then scales all widths by r. The result
    tiles a rect of aspect ratio r.
    """
    if not items:
        raise ValueError("cannot partition zero items")
    w = np.array([it.weight for it in items], dtype=float)
    x = np.array([it.x for it in items], dtype=float)
    y = np.array([it.y for it in items], dtype=float)
    id_rank = _rank_ids([it.id for it in items])
    ids = [it.id for it in items]
    alphas = w / w.sum()
    square = Rect(rect.x, rect.y, rect.h, rect.h)
    tree = _sew(square, np.arange(len(items)), ids, alphas, x, y, id_rank)
    return _scale_widths(tree, rect.x, float(r))


def _sew(
    rect: Rect,
    idx: np.ndarray,
    ids: list[str],
    alphas: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    id_rank: np.ndarray,
) -> PartitionNode:
    if idx.size == 1:
        i = int(idx[0])
        return LeafNode(rect, ids[i], float(alphas[i]))

    horizontal = rect.w >= rect.h  # tie prefers horizontal
    coord = x if horizontal else y
    order = idx[np.lexsort((id_rank[idx], coord[idx]))]
    csum = np.cumsum(alphas[order])
    total = float(csum[-1])
    k = int(np.argmin(np.abs(csum[:-1] - total / 2.0)))
    frac = float(csum[k]) / total

    if horizontal:
        wl = rect.w * frac
        left_rect = Rect(rect.x, rect.y, wl, rect.h)
        right_rect = Rect(rect.x + wl, rect.y, rect.w - wl, rect.h)
        left = _sew(left_rect, order[: k + 1], ids, alphas, x, y, id_rank)
        right = _sew(right_rect, order[k + 1 :], ids, alphas, x, y, id_rank)
        return InternalNode(rect, HORIZONTAL, rect.x + wl, left, right)
    hl = rect.h * frac
    top_rect = Rect(rect.x, rect.y, rect.w, hl)
    bottom_rect = Rect(rect.x, rect.y + hl, rect.w, rect.h - hl)
    left = _sew(top_rect, order[: k + 1], ids, alphas, x, y, id_rank)
    right = _sew(bottom_rect, order[k + 1 :], ids, alphas, x, y, id_rank)
    return InternalNode(rect, VERTICAL, rect.y + hl, left, right)


def _scale_widths(node: PartitionNode, origin_x: float, factor: float) -> PartitionNode:
    rect = node.rect
    scaled = Rect(origin_x + (rect.x - origin_x) * factor, rect.y, rect.w * factor, rect.h)
    if isinstance(node, LeafNode):
        return LeafNode(scaled, node.item_id, node.alpha)
    split = node.split
    if node.axis == HORIZONTAL:
        split = origin_x + (split - origin_x) * factor
    return InternalNode(
        scaled,
        node.axis,
        split,
        _scale_widths(node.left, origin_x, factor),
        _scale_widths(node.right, origin_x, factor),
    )


def two_level_partition(
    graph: VertexWeightedGraph,
    proportions: Sequence[float],
    positions: dict[str, tuple[float, float]],
    r: float,
    rect: Rect,
) -> PartitionNode:
    """Cluster-then-member partitioning of the display rect.

    The display rect is first divided among clusters (cluster position = mean
    of member positions, cluster weight = sum of member proportions); each
    cluster rect is then partitioned among its members. Leaf areas end up
    proportional to the vertex proportions globally. A single cluster reduces
    to a flat partition of all vertices.
    """
    missing = [v.id for v in graph.vertices if v.id not in positions]
    if missing:
        raise ValueError(f"positions missing for vertices {missing[:3]}")

    cgraph = cluster_graph(graph, list(proportions))
    prop_of = {v.id: p for v, p in zip(graph.vertices, proportions)}

    cluster_items = []
    for cid, cweight in zip(cgraph.ids, cgraph.weights):
        member_ids = cgraph.members[cid]
        cx = sum(positions[m][0] for m in member_ids) / len(member_ids)
        cy = sum(positions[m][1] for m in member_ids) / len(member_ids)
        cluster_items.append(PartitionItem(cid, cweight, cx, cy))

    top = dar_partition(rect, cluster_items, r)

    def splice(node: PartitionNode) -> PartitionNode:
        if isinstance(node, InternalNode):
            node.left = splice(node.left)
            node.right = splice(node.right)
            return node
        member_items = [
            PartitionItem(m, prop_of[m], positions[m][0], positions[m][1])
            for m in cgraph.members[node.item_id]
        ]
        subtree = dar_partition(node.rect, member_items, r)
        _rescale_alphas(subtree, node.alpha)
        return subtree

    return splice(top)


def _rescale_alphas(node: PartitionNode, factor: float) -> None:
    """Convert within-cluster leaf shares to global shares."""
    if isinstance(node, LeafNode):
        node.alpha *= factor
    else:
        _rescale_alphas(node.left, factor)
        _rescale_alphas(node.right, factor)
