"""SVG rendering of layout documents.

Border space is painted black; vertex rects are filled with their cluster
color and outlined in white; bridge bands are split at their centerline with
each half taking its rectangle's color; labels shrink to fit and disappear
below a minimum size. Channels (ego networks or path queries) overlay as red
polylines.
"""

from __future__ import annotations

from typing import Any, Iterable, Mapping

from vmap.document import cluster_color
from vmap.geometry import Rect
from vmap.partition import HORIZONTAL

LABEL_MAX_PX = 24.0
LABEL_MIN_PX = 6.0
LABEL_FILL_FRACTION = 0.9
# crude width model: average glyph advance as a fraction of font size
GLYPH_ASPECT = 0.6

CHANNEL_COLOR = "#e31a1c"
HIGHLIGHT_COLOR = "#ffffff"


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _rect_el(rect: Mapping[str, float] | Rect, fill: str, extra: str = "") -> str:
    if isinstance(rect, Rect):
        x, y, w, h = rect.x, rect.y, rect.w, rect.h
    else:
        x, y, w, h = rect["x"], rect["y"], rect["w"], rect["h"]
    return (
        f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'fill="{fill}"{extra}/>'
    )


def fit_label_px(label: str, rect_w_px: float) -> float | None:
    """Largest font size in [6, 24] px whose estimated text width fits 90%
    of the rect width; None when even the minimum does not fit."""
    if not label:
        return None
    width_budget = LABEL_FILL_FRACTION * rect_w_px

    def fits(size: float) -> bool:
        return GLYPH_ASPECT * size * len(label) <= width_budget

    if not fits(LABEL_MIN_PX):
        return None
    lo, hi = LABEL_MIN_PX, LABEL_MAX_PX
    for _ in range(20):
        mid = (lo + hi) / 2.0
        if fits(mid):
            lo = mid
        else:
            hi = mid
    return lo


def render_svg(
    doc: Mapping[str, Any],
    channels: Iterable[Mapping[str, Any]] = (),
    highlight_ids: Iterable[str] = (),
    cut_overlay: Iterable[Mapping[str, float]] = (),
) -> str:
    """Render a layout document to SVG 1.1 text."""
    display = doc["display"]
    px_w, px_h = doc["render"]["display_px"]
    scale = px_w / display["w"]  # px per layout unit
    d = doc["border_width"]
    highlight = set(highlight_ids)

    parts: list[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(px_w)}" height="{_fmt(px_h)}" '
        f'viewBox="{_fmt(display["x"])} {_fmt(display["y"])} '
        f'{_fmt(display["w"])} {_fmt(display["h"])}">'
    ]
    # border space: one black backdrop, rects and bridges painted over it
    parts.append(_rect_el(display, "#000000"))

    for bridge in doc["bridges"]:
        rect = bridge["rect"]
        if bridge["axis"] == HORIZONTAL:
            half = rect["w"] / 2.0
            left = {"x": rect["x"], "y": rect["y"], "w": half, "h": rect["h"]}
            right = {"x": rect["x"] + half, "y": rect["y"], "w": half, "h": rect["h"]}
            first, second = _ordered_halves(doc, bridge, axis="x")
            parts.append(_rect_el(left, first))
            parts.append(_rect_el(right, second))
        else:
            half = rect["h"] / 2.0
            top = {"x": rect["x"], "y": rect["y"], "w": rect["w"], "h": half}
            bottom = {"x": rect["x"], "y": rect["y"] + half, "w": rect["w"], "h": half}
            first, second = _ordered_halves(doc, bridge, axis="y")
            parts.append(_rect_el(top, first))
            parts.append(_rect_el(bottom, second))

    outline_w = 0.25 * d
    for v in doc["vertices"]:
        stroke = HIGHLIGHT_COLOR
        stroke_w = outline_w * (3.0 if v["id"] in highlight else 1.0)
        parts.append(
            _rect_el(
                v["rect"],
                cluster_color(doc, v["cluster"]),
                f' stroke="{stroke}" stroke-width="{_fmt(stroke_w)}"',
            )
        )

    for channel in channels:
        points = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in channel["polyline"])
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{CHANNEL_COLOR}" '
            f'stroke-width="{_fmt(d)}" stroke-linecap="round" stroke-linejoin="round"/>'
        )

    for v in doc["vertices"]:
        rect = v["rect"]
        size_px = fit_label_px(v["label"], rect["w"] * scale)
        if size_px is None:
            continue
        size_units = size_px / scale
        cx = rect["x"] + rect["w"] / 2.0
        cy = rect["y"] + rect["h"] / 2.0
        if size_units > rect["h"]:
            continue
        parts.append(
            f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" font-size="{_fmt(size_units)}" '
            f'font-family="sans-serif" text-anchor="middle" dominant-baseline="middle" '
            f'fill="#000000">{_escape(v["label"])}</text>'
        )

    cuts = list(cut_overlay)
    if cuts:
        # debug mode: earlier cuts get thicker strokes
        total = len(cuts)
        for line in cuts:
            width = d * (0.2 + 1.3 * (total - line["order"]) / total)
            parts.append(
                f'<line x1="{_fmt(line["x1"])}" y1="{_fmt(line["y1"])}" '
                f'x2="{_fmt(line["x2"])}" y2="{_fmt(line["y2"])}" '
                f'stroke="#333333" stroke-width="{_fmt(width)}"/>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _vertex_color(doc: Mapping[str, Any], vid: str) -> str:
    for v in doc["vertices"]:
        if v["id"] == vid:
            return cluster_color(doc, v["cluster"])
    raise KeyError(f"unknown vertex id {vid!r}")


def _ordered_halves(doc: Mapping[str, Any], bridge: Mapping[str, Any], axis: str) -> tuple[str, str]:
    """Colors for the two bridge halves, nearer rect first along the axis."""
    rect_a = next(v["rect"] for v in doc["vertices"] if v["id"] == bridge["a"])
    rect_b = next(v["rect"] for v in doc["vertices"] if v["id"] == bridge["b"])
    color_a = _vertex_color(doc, bridge["a"])
    color_b = _vertex_color(doc, bridge["b"])
    if rect_a[axis] <= rect_b[axis]:
        return color_a, color_b
    return color_b, color_a


def cut_order_overlay(adjusted) -> list[dict[str, float]]:
    """Debug overlay data: splitting bands in construction (pre)order."""
    from vmap.partition import InternalNode, internal_nodes

    out = []
    for order, node in enumerate(internal_nodes(adjusted)):
        assert isinstance(node, InternalNode)
        if node.axis == HORIZONTAL:
            out.append(
                {"order": order, "x1": node.split, "y1": node.rect.y, "x2": node.split, "y2": node.rect.y2}
            )
        else:
            out.append(
                {"order": order, "x1": node.rect.x, "y1": node.split, "x2": node.rect.x2, "y2": node.split}
            )
    return out


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )
