"""Benchmark harness behavior: statistics, CSV shape, improvement property."""

from __future__ import annotations

import csv
import io
import math

import pytest

from vmap.bench import (
    bench_aspect_ratio,
    bench_optimize,
    opt_bench_csv,
    ratio_bench_csv,
)
from vmap.metrics import CostWeights


class TestRatioBench:
    def test_single_point_trials_equal(self):
        result = bench_aspect_ratio(trials=20, n=1, ratio=1.5, seed=0)
        # one item fills the whole display for both algorithms
        assert result.dar_mean == pytest.approx(result.sew_mean)
        assert result.dar_mean == pytest.approx(0.0)

    def test_reproducible_with_seed(self):
        a = bench_aspect_ratio(trials=30, n=20, ratio=1.5, seed=9)
        b = bench_aspect_ratio(trials=30, n=20, ratio=1.5, seed=9)
        assert (a.dar_mean, a.sew_mean) == (b.dar_mean, b.sew_mean)

    def test_average_relative_improvement_across_cells(self):
        # desk-scale version of the six-cell table; the average relative loss
        # reduction of DAR over SEW must clear 10%
        golden = (1 + math.sqrt(5)) / 2
        cells = [
            (10, 1.5, 300), (100, 1.5, 120), (1024, 1.5, 12),
            (10, golden, 300), (100, golden, 120), (1024, golden, 12),
        ]
        improvements = []
        for n, ratio, trials in cells:
            res = bench_aspect_ratio(trials=trials, n=n, ratio=ratio, seed=n)
            improvements.append(res.relative_improvement)
        assert sum(improvements) / len(improvements) >= 0.10

    def test_csv_shape(self):
        res = bench_aspect_ratio(trials=5, n=10, ratio=1.5, seed=1)
        rows = list(csv.DictReader(io.StringIO(ratio_bench_csv([res]))))
        assert [r["algorithm"] for r in rows] == ["DAR", "SEW"]
        assert all(r["metric"] == "aspect_ratio_loss" for r in rows)


class TestOptBench:
    def test_blood_fake_edges_zero(self):
        # the blood graph is dense enough that optimized layouts produce no
        # fake adjacencies at all
        result = bench_optimize(
            "blood", CostWeights(0.5, 0.5, 0.0), ns=256, repeats=3, master_seed=1
        )
        mean, std, best = result.stat("fake_edges")
        assert (mean, std, best) == (0.0, 0.0, 0.0)

    def test_stat_fields_and_csv(self):
        result = bench_optimize(
            "blood", CostWeights(0.5, 0.5, 0.0), ns=32, repeats=2, master_seed=2
        )
        mean, std, best = result.stat("total_cost")
        assert best <= mean + 3 * (std + 1e-12)
        rows = list(csv.DictReader(io.StringIO(opt_bench_csv([result]))))
        assert {r["metric"] for r in rows} >= {"areal_error", "lost_edges", "total_cost"}

    def test_invalid_repeats(self):
        with pytest.raises(ValueError):
            bench_optimize("blood", CostWeights(1, 0, 0), ns=4, repeats=0)
