"""Monte Carlo and optimization benchmark protocols with CSV reporting."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

import numpy as np

from vmap.anneal import AnnealParams, OptimizeResult, optimize
from vmap.datasets import builtin, lognormal_points
from vmap.geometry import Rect
from vmap.graph import VertexWeightedGraph
from vmap.metrics import CostWeights
from vmap.partition import aspect_ratio_loss, dar_partition, leaves, sew_partition

CSV_COLUMNS = ["dataset", "algorithm", "metric", "mean", "std", "best", "seconds"]


@dataclass(frozen=True)
class RatioBenchResult:
    n: int
    ratio: float
    trials: int
    dar_mean: float
    dar_std: float
    sew_mean: float
    sew_std: float
    seconds: float

    @property
    def relative_improvement(self) -> float:
        return (self.sew_mean - self.dar_mean) / self.sew_mean


def bench_aspect_ratio(
    trials: int, n: int, ratio: float, seed: int = 0
) -> RatioBenchResult:
    """Run DAR and SEW on identical random inputs; report loss statistics.

    Each trial draws log-normal weights and uniform positions; DAR partitions
    a display rect of aspect ratio r, SEW partitions the 1:1 square and has
    its widths scaled by r.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    display = Rect(0.0, 0.0, ratio, 1.0)
    dar_losses = np.empty(trials)
    sew_losses = np.empty(trials)
    start = time.perf_counter()
    for t in range(trials):
        items = lognormal_points(n, rng)
        dar_tree = dar_partition(display, items, ratio)
        dar_losses[t] = aspect_ratio_loss([leaf.rect for leaf in leaves(dar_tree)], ratio)
        sew_tree = sew_partition(display, items, ratio)
        sew_losses[t] = aspect_ratio_loss([leaf.rect for leaf in leaves(sew_tree)], ratio)
    elapsed = time.perf_counter() - start
    return RatioBenchResult(
        n=n,
        ratio=ratio,
        trials=trials,
        dar_mean=float(dar_losses.mean()),
        dar_std=float(dar_losses.std(ddof=1)) if trials > 1 else 0.0,
        sew_mean=float(sew_losses.mean()),
        sew_std=float(sew_losses.std(ddof=1)) if trials > 1 else 0.0,
        seconds=elapsed,
    )


@dataclass(frozen=True)
class OptBenchResult:
    dataset: str
    repeats: int
    results: tuple[OptimizeResult, ...]
    seconds: float

    @property
    def best(self) -> OptimizeResult:
        return min(self.results, key=lambda r: r.report.total_cost)

    def stat(self, name: str) -> tuple[float, float, float]:
        """(mean, std, best-run value) of a MetricsReport field across repeats."""
        values = np.array([getattr(r.report, name) for r in self.results], dtype=float)
        std = float(values.std(ddof=1)) if len(values) > 1 else 0.0
        return float(values.mean()), std, float(getattr(self.best.report, name))


def bench_optimize(
    dataset: str | VertexWeightedGraph,
    weights: CostWeights,
    ns: int,
    repeats: int,
    ni: int | None = None,
    ratio: float = 1.5,
    master_seed: int = 0,
    enable_weight_perturbation: bool = True,
) -> OptBenchResult:
    """Repeat the annealing with seeds spawned from a master seed."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    graph = builtin(dataset) if isinstance(dataset, str) else dataset
    name = dataset if isinstance(dataset, str) else "custom"
    seeds = np.random.SeedSequence(master_seed).generate_state(repeats)
    start = time.perf_counter()
    results = []
    for seed in seeds:
        params = AnnealParams(
            ns=ns,
            ni=ni,
            weights=weights,
            ratio=ratio,
            seed=int(seed),
            enable_weight_perturbation=enable_weight_perturbation,
        )
        results.append(optimize(graph, params))
    elapsed = time.perf_counter() - start
    return OptBenchResult(name, repeats, tuple(results), elapsed)


def ratio_bench_csv(results: list[RatioBenchResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for res in results:
        tag = f"synthetic(n={res.n},r={res.ratio:.4g},trials={res.trials})"
        writer.writerow([tag, "DAR", "aspect_ratio_loss", f"{res.dar_mean:.6f}", f"{res.dar_std:.6f}", "", f"{res.seconds:.3f}"])
        writer.writerow([tag, "SEW", "aspect_ratio_loss", f"{res.sew_mean:.6f}", f"{res.sew_std:.6f}", "", f"{res.seconds:.3f}"])
    return buf.getvalue()


def opt_bench_csv(results: list[OptBenchResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    metrics = [
        "areal_error",
        "lost_edges",
        "fake_edges",
        "topological_error",
        "aspect_ratio_loss",
        "total_cost",
    ]
    for res in results:
        for metric in metrics:
            mean, std, best = res.stat(metric)
            writer.writerow(
                [res.dataset, "anneal", metric, f"{mean:.6f}", f"{std:.6f}", f"{best:.6f}", f"{res.seconds:.3f}"]
            )
    return buf.getvalue()
