"""Layout quality metrics: areal error, topological error, aspect-ratio loss, cost.

Rectangle adjacency (the geometric edge set) is extracted from the raw
partition leaves, before border insertion; a contact is any shared point or
segment between closed rects, guarded by a small tolerance against float
drift on shared BSP boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from vmap.geometry import Rect

# Contact tolerance scale: children of one BSP node share boundaries exactly,
# so this only needs to absorb float noise.
CONTACT_EPS_SCALE = 1e-9


@dataclass(frozen=True)
class CostWeights:
    areal: float
    topological: float
    ratio: float

    def __post_init__(self) -> None:
        for name, v in (("areal", self.areal), ("topological", self.topological), ("ratio", self.ratio)):
            if v < 0:
                raise ValueError(f"cost weight {name} must be nonnegative, got {v}")
        if abs(self.areal + self.topological + self.ratio - 1.0) > 1e-12:
            raise ValueError("cost weights must sum to 1")


@dataclass(frozen=True)
class MetricsReport:
    areal_error: float
    lost_edges: int
    fake_edges: int
    topological_error: float
    amended_topological_error: float
    aspect_ratio_loss: float
    total_cost: float

    def as_dict(self) -> dict[str, float | int]:
        return {
            "areal_error": self.areal_error,
            "lost_edges": self.lost_edges,
            "fake_edges": self.fake_edges,
            "topological_error": self.topological_error,
            "amended_topological_error": self.amended_topological_error,
            "aspect_ratio_loss": self.aspect_ratio_loss,
            "total_cost": self.total_cost,
        }


def contact_tolerance(rects: Mapping[str, Rect]) -> float:
    span = max(max(rc.w for rc in rects.values()), max(rc.h for rc in rects.values()))
    return CONTACT_EPS_SCALE * span


def contacts(rects: Mapping[str, Rect], tol: float | None = None) -> frozenset[frozenset[str]]:
    """Geometric adjacency: unordered id pairs of rects that share a point or segment.

    Corner-only contact counts. Tolerance defaults to 1e-9 of the largest
    rect extent.
    """
    ids = sorted(rects)
    if tol is None:
        tol = contact_tolerance(rects)
    x1 = np.array([rects[i].x for i in ids])
    y1 = np.array([rects[i].y for i in ids])
    x2 = np.array([rects[i].x2 for i in ids])
    y2 = np.array([rects[i].y2 for i in ids])
    # pairwise signed gaps; touch when both axis gaps are <= tol
    gx = np.maximum(x1[None, :] - x2[:, None], x1[:, None] - x2[None, :])
    gy = np.maximum(y1[None, :] - y2[:, None], y1[:, None] - y2[None, :])
    touch = (gx <= tol) & (gy <= tol)
    out: set[frozenset[str]] = set()
    ii, jj = np.nonzero(np.triu(touch, k=1))
    for i, j in zip(ii.tolist(), jj.tolist()):
        out.add(frozenset((ids[i], ids[j])))
    return frozenset(out)


def areal_error(proportions: Sequence[float], rects: Mapping[str, Rect], ids: Sequence[str]) -> float:
    """Sum of absolute differences between rect area proportions and weight proportions.

    `ids` gives the vertex order matching `proportions`.
    """
    areas = np.array([rects[i].area for i in ids], dtype=float)
    area_props = areas / areas.sum()
    return float(np.abs(area_props - np.asarray(proportions, dtype=float)).sum())


def topological_error(
    graph_edges: frozenset[frozenset[str]], contact_edges: frozenset[frozenset[str]]
) -> tuple[int, int, float]:
    """(lost, fake, error) where error = (lost + fake) / |union|; 0 for two empty sets."""
    lost = len(graph_edges - contact_edges)
    fake = len(contact_edges - graph_edges)
    union = len(graph_edges | contact_edges)
    error = (lost + fake) / union if union else 0.0
    return lost, fake, error


def amended_topological_error(
    graph_edges: frozenset[frozenset[str]], contact_edges: frozenset[frozenset[str]]
) -> float:
    """Lost edges over |E|; counts only adjacencies the bridges cannot show."""
    if not graph_edges:
        raise ValueError("amended topological error undefined for an empty edge set")
    return len(graph_edges - contact_edges) / len(graph_edges)


def total_cost(areal: float, topological: float, ratio_loss: float, weights: CostWeights) -> float:
    return weights.areal * areal + weights.topological * topological + weights.ratio * ratio_loss


def build_report(
    proportions: Sequence[float],
    ids: Sequence[str],
    rects: Mapping[str, Rect],
    graph_edges: frozenset[frozenset[str]],
    ratio_loss: float,
    weights: CostWeights,
    contact_edges: frozenset[frozenset[str]] | None = None,
) -> MetricsReport:
    """Evaluate every metric for one layout; contacts computed unless supplied."""
    if contact_edges is None:
        contact_edges = contacts(rects)
    lost, fake, err_t = topological_error(graph_edges, contact_edges)
    err_a = areal_error(proportions, rects, ids)
    amended = (len(graph_edges - contact_edges) / len(graph_edges)) if graph_edges else 0.0
    return MetricsReport(
        areal_error=err_a,
        lost_edges=lost,
        fake_edges=fake,
        topological_error=err_t,
        amended_topological_error=amended,
        aspect_ratio_loss=ratio_loss,
        total_cost=total_cost(err_a, err_t, ratio_loss, weights),
    )
