"""Simulated-annealing optimization of the layout configuration.

The optimization state holds perturbed vertex weights, 2D positions in the
unit square, and a perturbed desired aspect ratio. Each iteration applies one
of three perturbations (position, weight, ratio), re-partitions, and accepts
by the Metropolis rule with temperature T/256. T decays geometrically per
stage from T_ub to T_lb over ns stages; a fine-tuning phase of another ns
stages restarts T at T_ub but accepts strict improvements only.

Position moves combine three direction heuristics: a random vector (magnitude
T), attraction toward lost-edge partners (magnitude 1+T, skipping partners
closer than sqrt(alpha_i)/2), and repulsion from fake-edge partners
(magnitude T, skipping partners farther than sqrt(2)/2). The step length is
min(1, T); afterwards all positions are min-max normalized back into the unit
square (a degenerate axis collapses to 0.5).

Costs are evaluated against the *original* weight proportions and the *user*
target ratio, regardless of perturbation; disabling weight perturbation
therefore keeps areal error at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from vmap.geometry import Rect
from vmap.graph import VertexWeightedGraph, normalize_weights
from vmap.metrics import CostWeights, MetricsReport, build_report, contacts
from vmap.partition import PartitionNode, aspect_ratio_loss, leaf_rects, two_level_partition

T_UB_DEFAULT = 256.0
WEIGHT_CLIP = 64.0  # perturbed weight stays within [1/64, 64] x original
RATIO_CLIP = (1.0, 64.0)
ACCEPT_TEMP_SCALE = 256.0

POSITION = "position"
WEIGHT = "weight"
RATIO = "ratio"


@dataclass(frozen=True)
class LayoutConfiguration:
    ids: tuple[str, ...]
    original: np.ndarray  # original weight proportions, immutable
    weights: np.ndarray  # perturbed weights (start = original)
    positions: np.ndarray  # (n, 2) in [0, 1]^2
    ratio: float  # perturbed desired ratio in [1, 64]
    user_ratio: float  # loss is always measured against this

    def proportions(self) -> np.ndarray:
        return self.weights / self.weights.sum()

    def positions_dict(self) -> dict[str, tuple[float, float]]:
        return {vid: (float(x), float(y)) for vid, (x, y) in zip(self.ids, self.positions)}


@dataclass(frozen=True)
class AnnealParams:
    ns: int = 1024
    ni: int | None = None  # iterations per stage; None -> |V|
    t_ub: float = T_UB_DEFAULT
    t_lb: float | None = None  # None -> sqrt(min alpha / r) / 128
    weights: CostWeights = field(default_factory=lambda: CostWeights(0.5, 0.5, 0.0))
    ratio: float = 1.5
    enable_weight_perturbation: bool = True
    seed: int = 0
    display: Rect | None = None  # None -> Rect(0, 0, ratio, 1)
    keep_trace: bool = False
    fine_tune: bool = True

    def __post_init__(self) -> None:
        if self.ns < 1:
            raise ValueError(f"ns must be >= 1, got {self.ns}")
        if self.ni is not None and self.ni < 1:
            raise ValueError(f"ni must be >= 1, got {self.ni}")
        if self.ratio < 1:
            raise ValueError(f"desired ratio must be >= 1, got {self.ratio}")
        if self.t_lb is not None and not (0 < self.t_lb < self.t_ub):
            raise ValueError("temperatures must satisfy 0 < t_lb < t_ub")


@dataclass(frozen=True)
class TraceRecord:
    phase: str
    stage: int
    iteration: int
    action: str
    accepted: bool
    temperature: float
    cost: float
    areal_error: float
    topological_error: float
    ratio_loss: float
    best_cost: float


@dataclass(frozen=True)
class EvalResult:
    report: MetricsReport
    tree: PartitionNode
    contact_edges: frozenset[frozenset[str]]


@dataclass(frozen=True)
class OptimizeResult:
    config: LayoutConfiguration
    tree: PartitionNode
    report: MetricsReport
    trace: list[TraceRecord]
    evaluations: int


def cooling_schedule(ns: int, t_ub: float, t_lb: float) -> float:
    """Decay factor gamma with t_ub * gamma^ns = t_lb."""
    if not (0 < t_lb < t_ub):
        raise ValueError("temperatures must satisfy 0 < t_lb < t_ub")
    if ns < 1:
        raise ValueError("ns must be >= 1")
    return (t_lb / t_ub) ** (1.0 / ns)


def default_t_lb(min_alpha: float, ratio: float) -> float:
    return math.sqrt(min_alpha / ratio) / 128.0


def accept(cost_old: float, cost_new: float, temp: float, rng: np.random.Generator) -> bool:
    """Metropolis rule: always accept improvements; otherwise with
    probability exp((cost_old - cost_new) / (temp / 256))."""
    if cost_new < cost_old:
        return True
    prob = math.exp((cost_old - cost_new) * ACCEPT_TEMP_SCALE / temp)
    return bool(rng.random() < prob)


def evaluate(
    config: LayoutConfiguration,
    graph: VertexWeightedGraph,
    weights: CostWeights,
    display: Rect,
) -> EvalResult:
    """Partition under the configuration and measure every metric.

    Areal error compares leaf areas against the original proportions; ratio
    loss is measured against the user target ratio.
    """
    props = config.proportions()
    tree = two_level_partition(
        graph, props.tolist(), config.positions_dict(), config.ratio, display
    )
    rects = leaf_rects(tree)
    contact_edges = contacts(rects)
    ratio_loss = aspect_ratio_loss([rects[i] for i in config.ids], config.user_ratio)
    report = build_report(
        config.original.tolist(),
        list(config.ids),
        rects,
        graph.edges,
        ratio_loss,
        weights,
        contact_edges=contact_edges,
    )
    return EvalResult(report, tree, contact_edges)


def _minmax_normalize(positions: np.ndarray) -> np.ndarray:
    out = np.empty_like(positions)
    for axis in range(2):
        lo = positions[:, axis].min()
        hi = positions[:, axis].max()
        if hi - lo < 1e-12:
            out[:, axis] = 0.5  # degenerate axis guard
        else:
            out[:, axis] = (positions[:, axis] - lo) / (hi - lo)
    return out


def _partner_map(
    ids: tuple[str, ...], edge_set: frozenset[frozenset[str]]
) -> dict[str, list[str]]:
    partners: dict[str, list[str]] = {vid: [] for vid in ids}
    for e in edge_set:
        a, b = tuple(e)
        partners[a].append(b)
        partners[b].append(a)
    return partners


def perturb_position(
    config: LayoutConfiguration,
    temp: float,
    rng: np.random.Generator,
    lost_edges: frozenset[frozenset[str]],
    fake_edges: frozenset[frozenset[str]],
) -> LayoutConfiguration:
    """Move one random vertex along the combined heuristic direction."""
    n = len(config.ids)
    i = int(rng.integers(n))
    vid = config.ids[i]
    pos = config.positions
    p_i = pos[i]

    angle = rng.uniform(0.0, 2.0 * math.pi)
    direction = temp * np.array([math.cos(angle), math.sin(angle)])

    index_of = {v: k for k, v in enumerate(config.ids)}
    alpha_i = float(config.weights[i] / config.weights.sum())

    attract = np.zeros(2)
    for e in lost_edges:
        if vid in e:
            (other,) = e - {vid}
            p_j = pos[index_of[other]]
            dist = float(np.hypot(*(p_j - p_i)))
            if dist > math.sqrt(alpha_i) / 2.0:
                attract += (p_j - p_i) / dist
    norm = float(np.hypot(*attract))
    if norm > 1e-12:
        direction = direction + (1.0 + temp) * attract / norm

    repel = np.zeros(2)
    for e in fake_edges:
        if vid in e:
            (other,) = e - {vid}
            p_j = pos[index_of[other]]
            dist = float(np.hypot(*(p_i - p_j)))
            if 1e-12 < dist < math.sqrt(2.0) / 2.0:
                repel += (p_i - p_j) / dist
    norm = float(np.hypot(*repel))
    if norm > 1e-12:
        direction = direction + temp * repel / norm

    norm = float(np.hypot(*direction))
    if norm < 1e-12:
        angle = rng.uniform(0.0, 2.0 * math.pi)
        direction = np.array([math.cos(angle), math.sin(angle)])
        norm = 1.0

    step = min(1.0, temp)
    moved = pos.copy()
    moved[i] = p_i + step * direction / norm
    return replace(config, positions=_minmax_normalize(moved))


def perturb_weight(
    config: LayoutConfiguration, temp: float, rng: np.random.Generator
) -> LayoutConfiguration:
    """Scale one random vertex weight by (1+T) or 1/(1+T), clipped to
    [1/64, 64] times its original value."""
    i = int(rng.integers(len(config.ids)))
    factor = (1.0 + temp) if rng.random() < 0.5 else 1.0 / (1.0 + temp)
    w = config.weights.copy()
    orig = float(config.original[i])
    w[i] = float(np.clip(w[i] * factor, orig / WEIGHT_CLIP, orig * WEIGHT_CLIP))
    return replace(config, weights=w)


def perturb_ratio(
    config: LayoutConfiguration, temp: float, rng: np.random.Generator
) -> LayoutConfiguration:
    """Scale the desired ratio by (1+T) or 1/(1+T), clipped to [1, 64]."""
    factor = (1.0 + temp) if rng.random() < 0.5 else 1.0 / (1.0 + temp)
    lo, hi = RATIO_CLIP
    return replace(config, ratio=float(np.clip(config.ratio * factor, lo, hi)))


def initial_configuration(
    graph: VertexWeightedGraph, ratio: float, rng: np.random.Generator
) -> LayoutConfiguration:
    """Original weights, seeded or random positions normalized to the unit square."""
    props = np.array(normalize_weights(graph))
    ids = tuple(v.id for v in graph.vertices)
    if graph.positions is not None:
        pos = np.array([graph.positions[vid] for vid in ids], dtype=float)
    else:
        pos = rng.random((len(ids), 2))
    return LayoutConfiguration(
        ids=ids,
        original=props,
        weights=props.copy(),
        positions=_minmax_normalize(pos),
        ratio=float(ratio),
        user_ratio=float(ratio),
    )


def optimize(graph: VertexWeightedGraph, params: AnnealParams) -> OptimizeResult:
    """Run the full two-phase annealing; returns the best configuration seen.

    Fully reproducible from the seed: one chain is strictly sequential.
    """
    rng = np.random.default_rng(params.seed)
    n = len(graph.vertices)
    ni = params.ni if params.ni is not None else max(1, n)
    display = params.display if params.display is not None else Rect(0.0, 0.0, params.ratio, 1.0)

    config = initial_configuration(graph, params.ratio, rng)
    t_lb = params.t_lb if params.t_lb is not None else default_t_lb(float(config.original.min()), params.ratio)
    gamma = cooling_schedule(params.ns, params.t_ub, t_lb)

    current = evaluate(config, graph, params.weights, display)
    best_config, best_eval = config, current
    evaluations = 1

    actions = [POSITION, RATIO]
    if params.enable_weight_perturbation:
        actions = [POSITION, WEIGHT, RATIO]

    trace: list[TraceRecord] = []
    phases = ("main", "fine") if params.fine_tune else ("main",)
    for phase in phases:
        temp = params.t_ub
        for stage in range(params.ns):
            for iteration in range(ni):
                action = actions[int(rng.integers(len(actions)))]
                if action == POSITION:
                    lost = graph.edges - current.contact_edges
                    fake = current.contact_edges - graph.edges
                    candidate = perturb_position(config, temp, rng, lost, fake)
                elif action == WEIGHT:
                    candidate = perturb_weight(config, temp, rng)
                else:
                    candidate = perturb_ratio(config, temp, rng)

                cand_eval = evaluate(candidate, graph, params.weights, display)
                evaluations += 1
                old_cost = current.report.total_cost
                new_cost = cand_eval.report.total_cost
                if phase == "main":
                    accepted = accept(old_cost, new_cost, temp, rng)
                else:
                    accepted = new_cost < old_cost
                if accepted:
                    config, current = candidate, cand_eval
                    if new_cost < best_eval.report.total_cost:
                        best_config, best_eval = config, current
                if params.keep_trace:
                    trace.append(
                        TraceRecord(
                            phase=phase,
                            stage=stage,
                            iteration=iteration,
                            action=action,
                            accepted=accepted,
                            temperature=temp,
                            cost=current.report.total_cost,
                            areal_error=current.report.areal_error,
                            topological_error=current.report.topological_error,
                            ratio_loss=current.report.aspect_ratio_loss,
                            best_cost=best_eval.report.total_cost,
                        )
                    )
            temp *= gamma

    return OptimizeResult(
        config=best_config,
        tree=best_eval.tree,
        report=best_eval.report,
        trace=trace,
        evaluations=evaluations,
    )
