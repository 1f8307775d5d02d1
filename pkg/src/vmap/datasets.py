"""Bundled desk-scale datasets and synthetic input generators."""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from vmap.errors import UnknownDatasetError
from vmap.graph import VertexWeightedGraph, load_graph
from vmap.partition import PartitionItem

BUILTIN_NAMES = ("blood", "netherlands", "germany", "les-miserables")


def builtin(name: str) -> VertexWeightedGraph:
    """Load a bundled dataset by name.

    blood: 8 US blood groups, donor-compatibility edges.
    netherlands: 12 provinces, population weights, adjacency edges.
    germany: 16 states, area weights, adjacency edges.
    les-miserables: 77-character co-occurrence network with 6 clusters.
    """
    if name not in BUILTIN_NAMES:
        raise UnknownDatasetError(f"unknown dataset {name!r}; expected one of {BUILTIN_NAMES}")
    payload = resources.files("vmap.data").joinpath(f"{name}.json").read_text()
    return load_graph(json.loads(payload))


def builtin_note(name: str) -> str:
    if name not in BUILTIN_NAMES:
        raise UnknownDatasetError(f"unknown dataset {name!r}; expected one of {BUILTIN_NAMES}")
    payload = resources.files("vmap.data").joinpath(f"{name}.json").read_text()
    return json.loads(payload).get("note", "")


def lognormal_points(n: int, rng: np.random.Generator) -> list[PartitionItem]:
    """Synthetic trial input: uniform positions in [0,1)^2, log-normal weights
    (underlying normal mean 0, std 1) normalized to proportions."""
    if n < 1:
        raise ValueError("n must be >= 1")
    weights = rng.lognormal(0.0, 1.0, n)
    weights = weights / weights.sum()
    xs = rng.random(n)
    ys = rng.random(n)
    return [
        PartitionItem(f"p{i}", float(weights[i]), float(xs[i]), float(ys[i]))
        for i in range(n)
    ]
