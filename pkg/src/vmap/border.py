"""Fixed-width border corridors via two-stage splitting-line adjustment.

Inserting a border of width d around every leaf is equivalent to expanding
each splitting line into a band of width 2d while keeping leaf areas
proportional to their weight shares. The coarse top-down pass repositions
each splitting line by solving a 2x2 linear system that anticipates the band
area inside each side (band area = 2d * total splitting-line length minus
2d^2 per T-junction). The fine bottom-up pass then rescales subtrees so that
exact leaf-area sums sit in the prescribed ratio at every node, which makes
the final proportions exact.

The bottom-up rescaling is uniform per subtree, so interior band widths can
drift slightly from 2d (fractions of a percent at practical widths); leaf
proportions are exact regardless. Bridge detection therefore allows a small
gap tolerance.

A proportional mode (each leaf cedes a fixed fraction p of its area) is also
provided; it trivially preserves proportions but yields non-uniform border
widths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from vmap.errors import BorderTooWideError
from vmap.geometry import Rect
from vmap.graph import VertexWeightedGraph
from vmap.partition import HORIZONTAL, VERTICAL, InternalNode, LeafNode, PartitionNode, leaves

# Bridge adjacency: gap may exceed 2d by this fraction of d (bottom-up drift).
BRIDGE_GAP_SLACK = 0.5


@dataclass(frozen=True)
class BorderSpec:
    """Border configuration: fixed-width (half-gap d) or proportional (fraction p)."""

    mode: str = "fixed"  # "fixed" | "proportional"
    d: float = 0.0
    p: float = 0.0

    def __post_init__(self) -> None:
        if self.mode == "fixed":
            if not self.d > 0:
                raise ValueError(f"fixed border width must be positive, got {self.d}")
        elif self.mode == "proportional":
            if not 0 < self.p < 1:
                raise ValueError(f"proportional border fraction must be in (0,1), got {self.p}")
        else:
            raise ValueError(f"unknown border mode {self.mode!r}")


@dataclass(frozen=True)
class Bridge:
    a: str
    b: str
    rect: Rect  # band region between the two leaf rects
    axis: str  # HORIZONTAL: rects left/right of the band; VERTICAL: above/below


# --- splitting-line geometry -------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """Axis-aligned splitting segment: `fixed` coordinate, span [lo, hi]."""

    orientation: str  # "h": horizontal (y = fixed); "v": vertical (x = fixed)
    fixed: float
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo


def _segment_of(node: InternalNode) -> Segment:
    if node.axis == HORIZONTAL:
        return Segment("v", node.split, node.rect.y, node.rect.y2)
    return Segment("h", node.split, node.rect.x, node.rect.x2)


def segments(node: PartitionNode) -> list[Segment]:
    """All splitting segments in the subtree (pre-adjustment geometry)."""
    if isinstance(node, LeafNode):
        return []
    return [_segment_of(node)] + segments(node.left) + segments(node.right)


def junction_count(node: PartitionNode) -> int:
    """T-junctions among the subtree's splitting segments.

    Counted geometrically: each segment endpoint lying strictly inside a
    perpendicular segment is one junction.
    """
    segs = segments(node)
    if not segs:
        return 0
    span = max(s.hi for s in segs) - min(s.lo for s in segs)
    tol = 1e-12 * max(span, 1.0)
    count = 0
    for s in segs:
        for other in segs:
            if other.orientation == s.orientation:
                continue
            for end in (s.lo, s.hi):
                # endpoint of s is (fixed, end) for "v", (end, fixed) for "h";
                # it lies on `other` iff the cross coordinate matches other's
                # fixed and s.fixed falls strictly inside other's span.
                if abs(end - other.fixed) <= tol and other.lo + tol < s.fixed < other.hi - tol:
                    count += 1
    return count


def border_area(node: PartitionNode, d: float) -> float:
    """Band area inside the node's rect when splitting lines widen to 2d bands."""
    segs = segments(node)
    return 2.0 * d * sum(s.length for s in segs) - 2.0 * d * d * junction_count(node)


# --- per-subtree aggregates (computed once on the input tree) ----------------


@dataclass
class _Aggregates:
    alpha: float  # weight share of the subtree
    h_len: float  # total horizontal splitting-segment length
    v_len: float  # total vertical splitting-segment length
    junctions: int


def _collect_aggregates(node: PartitionNode, table: dict[int, _Aggregates], tol: float) -> list[Segment]:
    """Fill `table` keyed by id(node); returns the subtree's segments."""
    if isinstance(node, LeafNode):
        table[id(node)] = _Aggregates(node.alpha, 0.0, 0.0, 0)
        return []
    left_segs = _collect_aggregates(node.left, table, tol)
    right_segs = _collect_aggregates(node.right, table, tol)
    own = _segment_of(node)
    la, ra = table[id(node.left)], table[id(node.right)]
    crossing = 0
    for s in left_segs + right_segs:
        if s.orientation != own.orientation:
            for end in (s.lo, s.hi):
                if abs(end - own.fixed) <= tol and own.lo + tol < s.fixed < own.hi - tol:
                    crossing += 1
    agg = _Aggregates(
        alpha=la.alpha + ra.alpha,
        h_len=la.h_len + ra.h_len + (own.length if own.orientation == "h" else 0.0),
        v_len=la.v_len + ra.v_len + (own.length if own.orientation == "v" else 0.0),
        junctions=la.junctions + ra.junctions + crossing,
    )
    table[id(node)] = agg
    return [own] + left_segs + right_segs


# --- coarse top-down adjustment ----------------------------------------------


def top_down_adjust(tree: PartitionNode, d: float) -> PartitionNode:
    """Reposition splitting lines root-to-leaf, opening 2d bands.

    The root rect is first inset by d on all sides so every leaf receives a
    border of width d against the display edge as well. Raises
    BorderTooWideError when d is infeasible.
    """
    if d <= 0:
        raise ValueError(f"border width must be positive, got {d}")
    for leaf in leaves(tree):
        if min(leaf.rect.w, leaf.rect.h) <= 4.0 * d:
            raise BorderTooWideError(
                f"leaf {leaf.item_id!r} extent {min(leaf.rect.w, leaf.rect.h):.6g} <= 4d = {4 * d:.6g}"
            )

    span = max(tree.rect.w, tree.rect.h)
    table: dict[int, _Aggregates] = {}
    _collect_aggregates(tree, table, 1e-12 * max(span, 1.0))

    if tree.rect.w <= 2 * d or tree.rect.h <= 2 * d:
        raise BorderTooWideError("display rect smaller than the outer frame")
    return _top_down(tree, tree.rect.shrink(d), d, table)


def _top_down(node: PartitionNode, cur: Rect, d: float, table: dict[int, _Aggregates]) -> PartitionNode:
    if isinstance(node, LeafNode):
        return LeafNode(cur, node.item_id, node.alpha)

    orig = node.rect
    sx, sy = cur.w / orig.w, cur.h / orig.h
    la, ra = table[id(node.left)], table[id(node.right)]

    if node.axis == HORIZONTAL:
        ext_l = cur.w * (node.left.rect.w / orig.w)
        ext_r = cur.w - ext_l
        total = cur.w
        cross = cur.h
        # widths rescale: horizontal segments stretch with c, vertical ones do not
        scaled_l, fixed_l = la.h_len * sx, la.v_len * sy
        scaled_r, fixed_r = ra.h_len * sx, ra.v_len * sy
    else:
        ext_l = cur.h * (node.left.rect.h / orig.h)
        ext_r = cur.h - ext_l
        total = cur.h
        cross = cur.w
        scaled_l, fixed_l = la.v_len * sy, la.h_len * sx
        scaled_r, fixed_r = ra.v_len * sy, ra.h_len * sx

    target = total - 2.0 * d
    # EncodingArea'_side(c) = c * P_side + Q_side
    p_l = ext_l * cross - 2.0 * d * scaled_l
    q_l = -2.0 * d * fixed_l + 2.0 * d * d * la.junctions
    p_r = ext_r * cross - 2.0 * d * scaled_r
    q_r = -2.0 * d * fixed_r + 2.0 * d * d * ra.junctions
    denom = p_l * ra.alpha + (ext_l / ext_r) * p_r * la.alpha
    c_l = ((target * p_r / ext_r + q_r) * la.alpha - q_l * ra.alpha) / denom
    c_r = (target - c_l * ext_l) / ext_r
    if not (c_l > 0 and c_r > 0 and c_l * ext_l > 0 and c_r * ext_r > 0):
        raise BorderTooWideError(f"no positive solution at node with rect {orig}")

    if node.axis == HORIZONTAL:
        left_cur = Rect(cur.x, cur.y, c_l * ext_l, cur.h)
        right_cur = Rect(cur.x + c_l * ext_l + 2.0 * d, cur.y, c_r * ext_r, cur.h)
        split = left_cur.x2 + d
    else:
        left_cur = Rect(cur.x, cur.y, cur.w, c_l * ext_l)
        right_cur = Rect(cur.x, cur.y + c_l * ext_l + 2.0 * d, cur.w, c_r * ext_r)
        split = left_cur.y2 + d

    return InternalNode(
        cur,
        node.axis,
        split,
        _top_down(node.left, left_cur, d, table),
        _top_down(node.right, right_cur, d, table),
    )


# --- fine bottom-up adjustment -----------------------------------------------


def bottom_up_adjust(tree: PartitionNode, d: float) -> PartitionNode:
    """Rebalance every splitting band leaf-to-root using exact leaf-area sums.

    Input must be a top_down_adjust output. After this pass, leaf areas are
    exactly proportional to the leaf weight shares (up to float error).
    """
    out = _copy_tree(tree)
    _bottom_up(out, d)
    _refresh_splits(out)
    return out


def _copy_tree(node: PartitionNode) -> PartitionNode:
    if isinstance(node, LeafNode):
        return LeafNode(node.rect, node.item_id, node.alpha)
    return InternalNode(node.rect, node.axis, node.split, _copy_tree(node.left), _copy_tree(node.right))


def _leaf_area_sum(node: PartitionNode) -> float:
    return sum(leaf.rect.area for leaf in leaves(node))


def _alpha_sum(node: PartitionNode) -> float:
    return sum(leaf.alpha for leaf in leaves(node))


def _bottom_up(node: PartitionNode, d: float) -> None:
    if isinstance(node, LeafNode):
        return
    _bottom_up(node.left, d)
    _bottom_up(node.right, d)

    ea_l, ea_r = _leaf_area_sum(node.left), _leaf_area_sum(node.right)
    a_l, a_r = _alpha_sum(node.left), _alpha_sum(node.right)
    # targets: c_l * ea_l : c_r * ea_r = a_l : a_r, extents sum to total - 2d
    rho = (ea_l * a_r) / (ea_r * a_l)  # c_l = c_r / rho
    if node.axis == HORIZONTAL:
        target = node.rect.w - 2.0 * d
        ext_l, ext_r = node.left.rect.w, node.right.rect.w
    else:
        target = node.rect.h - 2.0 * d
        ext_l, ext_r = node.left.rect.h, node.right.rect.h
    c_r = target / (ext_l / rho + ext_r)
    c_l = c_r / rho
    if not (c_l > 0 and c_r > 0):
        raise BorderTooWideError(f"no positive solution at node with rect {node.rect}")

    if node.axis == HORIZONTAL:
        _scale_x(node.left, node.left.rect.x, c_l)
        _scale_x(node.right, node.right.rect.x, c_r)
        shift = (node.left.rect.x2 + 2.0 * d) - node.right.rect.x
        _translate(node.right, shift, 0.0)
    else:
        _scale_y(node.left, node.left.rect.y, c_l)
        _scale_y(node.right, node.right.rect.y, c_r)
        shift = (node.left.rect.y2 + 2.0 * d) - node.right.rect.y
        _translate(node.right, 0.0, shift)


def _scale_x(node: PartitionNode, pivot: float, c: float) -> None:
    r = node.rect
    node.rect = Rect(pivot + (r.x - pivot) * c, r.y, r.w * c, r.h)
    if isinstance(node, InternalNode):
        _scale_x(node.left, pivot, c)
        _scale_x(node.right, pivot, c)


def _scale_y(node: PartitionNode, pivot: float, c: float) -> None:
    r = node.rect
    node.rect = Rect(r.x, pivot + (r.y - pivot) * c, r.w, r.h * c)
    if isinstance(node, InternalNode):
        _scale_y(node.left, pivot, c)
        _scale_y(node.right, pivot, c)


def _translate(node: PartitionNode, dx: float, dy: float) -> None:
    r = node.rect
    node.rect = Rect(r.x + dx, r.y + dy, r.w, r.h)
    if isinstance(node, InternalNode):
        _translate(node.left, dx, dy)
        _translate(node.right, dx, dy)


def _refresh_splits(node: PartitionNode) -> None:
    """Re-derive split coordinates (band centerlines) from child rects."""
    if isinstance(node, LeafNode):
        return
    if node.axis == HORIZONTAL:
        node.split = (node.left.rect.x2 + node.right.rect.x) / 2.0
    else:
        node.split = (node.left.rect.y2 + node.right.rect.y) / 2.0
    _refresh_splits(node.left)
    _refresh_splits(node.right)


def adjust_tree(tree: PartitionNode, d: float) -> PartitionNode:
    """Full fixed-width adjustment: coarse top-down pass then fine bottom-up pass."""
    return bottom_up_adjust(top_down_adjust(tree, d), d)


def apply_border(tree: PartitionNode, spec: BorderSpec) -> PartitionNode:
    """Open borders according to the spec's mode."""
    if spec.mode == "fixed":
        return adjust_tree(tree, spec.d)
    return proportional_border(tree, spec.p)


# --- proportional border ------------------------------------------------------


def proportional_border(tree: PartitionNode, p: float) -> PartitionNode:
    """Shrink each leaf concentrically so it cedes fraction p of its area.

    Proportions are preserved exactly and no leaf can vanish, at the cost of
    non-uniform border widths.
    """
    if not 0 < p < 1:
        raise ValueError(f"border fraction must be in (0,1), got {p}")
    factor = math.sqrt(1.0 - p)

    def shrink(node: PartitionNode) -> PartitionNode:
        if isinstance(node, LeafNode):
            r = node.rect
            nw, nh = r.w * factor, r.h * factor
            return LeafNode(
                Rect(r.x + (r.w - nw) / 2.0, r.y + (r.h - nh) / 2.0, nw, nh),
                node.item_id,
                node.alpha,
            )
        return InternalNode(node.rect, node.axis, node.split, shrink(node.left), shrink(node.right))

    return shrink(tree)


# --- bridges -------------------------------------------------------------------


def bridges(adjusted: PartitionNode, graph: VertexWeightedGraph, d: float) -> list[Bridge]:
    """Band regions joining adjacent rects of connected vertices.

    For every graph edge whose adjusted rects face each other across a border
    band (gap within 2d plus drift slack) with positively overlapping spans,
    the shared band region is emitted. Unconnected neighbors get no bridge.
    """
    rect_of = {leaf.item_id: leaf.rect for leaf in leaves(adjusted)}
    span = max(adjusted.rect.w, adjusted.rect.h)
    eps = 1e-9 * span
    max_gap = 2.0 * d + BRIDGE_GAP_SLACK * d

    out: list[Bridge] = []
    for edge in sorted(graph.edges, key=lambda e: sorted(e)):
        a, b = sorted(edge)
        ra, rb = rect_of.get(a), rect_of.get(b)
        if ra is None or rb is None:
            continue
        gx = max(rb.x - ra.x2, ra.x - rb.x2)
        gy = max(rb.y - ra.y2, ra.y - rb.y2)
        if -eps <= gx <= max_gap:
            lo, hi = max(ra.y, rb.y), min(ra.y2, rb.y2)
            if hi - lo > eps:
                left, right = (ra, rb) if ra.x <= rb.x else (rb, ra)
                if right.x - left.x2 > eps:
                    out.append(Bridge(a, b, Rect(left.x2, lo, right.x - left.x2, hi - lo), HORIZONTAL))
        elif -eps <= gy <= max_gap:
            lo, hi = max(ra.x, rb.x), min(ra.x2, rb.x2)
            if hi - lo > eps:
                top, bottom = (ra, rb) if ra.y <= rb.y else (rb, ra)
                if bottom.y - top.y2 > eps:
                    out.append(Bridge(a, b, Rect(lo, top.y2, hi - lo, bottom.y - top.y2), VERTICAL))
    return out


def default_border_width(rect: Rect) -> float:
    """Default fixed border width: 1% of the smaller display extent."""
    return 0.01 * min(rect.w, rect.h)


def feasible_border_width(tree: PartitionNode, rect: Rect) -> float:
    """Default width clamped so the smallest leaf stays clear of the 4d
    feasibility bound (skewed weight distributions shrink leaves well below
    1% of the display)."""
    smallest = min(min(leaf.rect.w, leaf.rect.h) for leaf in leaves(tree))
    return min(default_border_width(rect), 0.2 * smallest)


def min_leaf_gap(adjusted: PartitionNode) -> float:
    """Smallest pairwise leaf separation (max of the two axis gaps per pair)."""
    rects = [leaf.rect for leaf in leaves(adjusted)]
    best = math.inf
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            gx = max(rects[j].x - rects[i].x2, rects[i].x - rects[j].x2)
            gy = max(rects[j].y - rects[i].y2, rects[i].y - rects[j].y2)
            best = min(best, max(gx, gy))
    return best
