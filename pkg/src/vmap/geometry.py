"""Axis-aligned rectangle primitives used throughout the layout pipeline.

Coordinates follow screen convention: origin at the top-left, x grows right,
y grows down. All extents are strictly positive.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self) -> None:
        if not (self.w > 0 and self.h > 0):
            raise ValueError(f"rect extents must be positive, got w={self.w}, h={self.h}")

    @property
    def x2(self) -> float:
        return self.x + self.w

    @property
    def y2(self) -> float:
        return self.y + self.h

    @property
    def area(self) -> float:
        return self.w * self.h

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)

    def shrink(self, margin: float) -> Rect:
        """Inset by `margin` on all four sides."""
        return Rect(self.x + margin, self.y + margin, self.w - 2 * margin, self.h - 2 * margin)

    def contains_point(self, px: float, py: float, tol: float = 0.0) -> bool:
        """Closed containment, optionally expanded by `tol`."""
        return (
            self.x - tol <= px <= self.x2 + tol
            and self.y - tol <= py <= self.y2 + tol
        )

    def strictly_contains_point(self, px: float, py: float, tol: float = 0.0) -> bool:
        """Open containment, optionally shrunk by `tol`."""
        return (
            self.x + tol < px < self.x2 - tol
            and self.y + tol < py < self.y2 - tol
        )


def aspect_ratio(rect: Rect) -> float:
    """Larger side divided by the smaller side; always >= 1."""
    return max(rect.w / rect.h, rect.h / rect.w)


def rect_gap(a: Rect, b: Rect) -> tuple[float, float]:
    """Signed separation between two rects per axis.

    Positive: open gap between the facing sides. Negative: extent of overlap.
    Zero: exact touch.
    """
    gx = max(b.x - a.x2, a.x - b.x2)
    gy = max(b.y - a.y2, a.y - b.y2)
    return gx, gy


def rects_touch(a: Rect, b: Rect, tol: float) -> bool:
    """True when the closed rects intersect (shared point or segment) within tol."""
    gx, gy = rect_gap(a, b)
    return gx <= tol and gy <= tol


def interval_overlap(a_lo: float, a_hi: float, b_lo: float, b_hi: float) -> float:
    """Length of the intersection of two closed intervals (negative when disjoint)."""
    return min(a_hi, b_hi) - max(a_lo, b_lo)
