"""Command-line entry points: layout computation, benchmarks, query service."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from vmap.anneal import AnnealParams
from vmap.bench import bench_aspect_ratio, bench_optimize, opt_bench_csv, ratio_bench_csv
from vmap.datasets import BUILTIN_NAMES, builtin
from vmap.document import dumps_document, metrics_csv
from vmap.errors import VMapError
from vmap.graph import load_graph
from vmap.metrics import CostWeights
from vmap.pipeline import run_layout
from vmap.render import cut_order_overlay, render_svg

EXIT_USAGE = 2


def _parse_lambda(text: str) -> CostWeights:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated weights: a,t,r")
    try:
        a, t, r = (float(p) for p in parts)
        return CostWeights(a, t, r)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", type=Path, help="graph document (JSON)")
    group.add_argument("--builtin", choices=BUILTIN_NAMES, help="bundled dataset name")


def _load_source(args: argparse.Namespace):
    if args.builtin:
        return builtin(args.builtin)
    try:
        payload = json.loads(args.input.read_text())
    except FileNotFoundError:
        raise VMapError(f"input file not found: {args.input}")
    except json.JSONDecodeError as exc:
        raise VMapError(f"input is not valid JSON: {exc}")
    return load_graph(payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vmap",
        description="Rectangular space-filling maps for vertex-weighted graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    layout = sub.add_parser("layout", help="optimize a layout and export document/SVG")
    _add_graph_source(layout)
    layout.add_argument("--lambda", dest="weights", type=_parse_lambda, default=CostWeights(0.5, 0.5, 0.0), metavar="A,T,R", help="cost weights (default 0.5,0.5,0)")
    layout.add_argument("--ns", type=int, default=1024, help="annealing stages (default 1024)")
    layout.add_argument("--ni", type=int, default=None, help="iterations per stage (default |V|)")
    layout.add_argument("--seed", type=int, default=0)
    layout.add_argument("--ratio", type=float, default=1.5, help="desired aspect ratio (default 1.5)")
    layout.add_argument("--border", type=float, default=None, help="border width d (default 1%% of display)")
    layout.add_argument("--no-weight-perturb", action="store_true", help="keep areal error at zero")
    layout.add_argument("--no-fine-tune", action="store_true", help="skip the fine-tuning phase")
    layout.add_argument("--precompute-ego", action="store_true", help="embed all ego channels in the document")
    layout.add_argument("--out", type=Path, default=None, help="layout document output path")
    layout.add_argument("--svg", type=Path, default=None, help="SVG output path")
    layout.add_argument("--debug-cuts", action="store_true", help="overlay cut order on the SVG (earlier cuts thicker)")
    layout.add_argument("--metrics-csv", type=Path, default=None, help="metrics CSV output path")
    layout.add_argument("--trace", type=Path, default=None, help="JSONL annealing trace output path")

    bench = sub.add_parser("bench", help="benchmark protocols")
    bench_sub = bench.add_subparsers(dest="bench_command", required=True)

    ratio = bench_sub.add_parser("ratio", help="Monte Carlo aspect-ratio comparison (DAR vs SEW)")
    ratio.add_argument("--n", type=int, default=100, help="points per trial")
    ratio.add_argument("--trials", type=int, default=1000)
    ratio.add_argument("--r", type=float, default=1.5, dest="ratio")
    ratio.add_argument("--seed", type=int, default=0)
    ratio.add_argument("--out", type=Path, default=None, help="CSV output path (default stdout)")

    opt = bench_sub.add_parser("opt", help="repeated annealing on a dataset")
    _add_graph_source(opt)
    opt.add_argument("--lambda", dest="weights", type=_parse_lambda, default=CostWeights(0.5, 0.5, 0.0), metavar="A,T,R")
    opt.add_argument("--ns", type=int, default=2048)
    opt.add_argument("--ni", type=int, default=None)
    opt.add_argument("--repeats", type=int, default=5)
    opt.add_argument("--ratio", type=float, default=1.5)
    opt.add_argument("--seed", type=int, default=0)
    opt.add_argument("--no-weight-perturb", action="store_true")
    opt.add_argument("--out", type=Path, default=None, help="CSV output path (default stdout)")

    serve = sub.add_parser("serve", help="serve a layout document for the viewer")
    serve.add_argument("--doc", type=Path, required=True, help="layout document path")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")

    return parser


def cmd_layout(args: argparse.Namespace) -> int:
    graph = _load_source(args)
    params = AnnealParams(
        ns=args.ns,
        ni=args.ni,
        weights=args.weights,
        ratio=args.ratio,
        seed=args.seed,
        enable_weight_perturbation=not args.no_weight_perturb,
        keep_trace=args.trace is not None,
        fine_tune=not args.no_fine_tune,
    )
    result = run_layout(
        graph, params, border_width=args.border, precompute_ego=args.precompute_ego
    )
    report = result.optimize_result.report
    print(
        f"areal={report.areal_error:.4f} lost={report.lost_edges} fake={report.fake_edges} "
        f"topological={report.topological_error:.4f} "
        f"amended={report.amended_topological_error:.4f} "
        f"ratio_loss={report.aspect_ratio_loss:.4f} cost={report.total_cost:.4f}"
    )
    if args.out:
        args.out.write_text(dumps_document(result.document))
        print(f"document: {args.out}")
    if args.svg:
        overlay = cut_order_overlay(result.adjusted) if args.debug_cuts else ()
        args.svg.write_text(render_svg(result.document, cut_overlay=overlay))
        print(f"svg: {args.svg}")
    if args.metrics_csv:
        args.metrics_csv.write_text(metrics_csv(result.document))
        print(f"metrics: {args.metrics_csv}")
    if args.trace:
        with args.trace.open("w") as fh:
            for record in result.optimize_result.trace:
                fh.write(json.dumps(dataclasses.asdict(record)) + "\n")
        print(f"trace: {args.trace} ({len(result.optimize_result.trace)} records)")
    return 0


def cmd_bench_ratio(args: argparse.Namespace) -> int:
    result = bench_aspect_ratio(args.trials, args.n, args.ratio, seed=args.seed)
    csv_text = ratio_bench_csv([result])
    if args.out:
        args.out.write_text(csv_text)
        print(f"csv: {args.out}")
    else:
        sys.stdout.write(csv_text)
    print(
        f"DAR {result.dar_mean:.4f} +/- {result.dar_std:.4f} | "
        f"SEW {result.sew_mean:.4f} +/- {result.sew_std:.4f} | "
        f"relative improvement {100 * result.relative_improvement:.2f}%",
        file=sys.stderr,
    )
    return 0


def cmd_bench_opt(args: argparse.Namespace) -> int:
    dataset = args.builtin if args.builtin else _load_source(args)
    result = bench_optimize(
        dataset,
        args.weights,
        ns=args.ns,
        repeats=args.repeats,
        ni=args.ni,
        ratio=args.ratio,
        master_seed=args.seed,
        enable_weight_perturbation=not args.no_weight_perturb,
    )
    csv_text = opt_bench_csv([result])
    if args.out:
        args.out.write_text(csv_text)
        print(f"csv: {args.out}")
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from vmap.service import create_app

    try:
        document = json.loads(args.doc.read_text())
    except FileNotFoundError:
        raise VMapError(f"document not found: {args.doc}")
    app = create_app(document)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "layout":
            return cmd_layout(args)
        if args.command == "bench":
            if args.bench_command == "ratio":
                return cmd_bench_ratio(args)
            return cmd_bench_opt(args)
        if args.command == "serve":
            return cmd_serve(args)
    except VMapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
