"""Command-line interface for generating, sampling, classifying and sweeping."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence
import argparse
import logging
import sys

from dotenv import load_dotenv

from config import (
    DEFAULT_BETA0,
    DEFAULT_CI_RADIUS,
    DEFAULT_DECAY,
    DEFAULT_ERROR_THRESHOLD,
    DEFAULT_ITERATIONS,
    DEFAULT_M,
    DEFAULT_MINORITY_FRACTION,
    DEFAULT_NODES,
    DEFAULT_PAGERANK_DAMPING,
    DEFAULT_PAGERANK_TOL,
    LOG_FORMAT,
    PLOT_FIGURES,
    SAMPLER_METHODS,
    resolve_log_level,
)
from errors import InputError, OutputError
from graph_io import load_graph, save_graph
from inference import RelaxationParams
from metrics import structural
from netgen import GeneratorConfig, generate
from pipeline import classify
from reporting import plot_data, read_results, summarize_min_sample, write_csv, write_plot_data
from run import load_experiment_config, sweep
from samplers import SamplerSpec, sample
from utils import save_json, to_json

load_dotenv()
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INTERNAL_ERROR = 2


# ===== COMMANDS =====


def cmd_generate(args: argparse.Namespace) -> None:
    cfg = GeneratorConfig(
        nodes=args.nodes,
        m=args.m,
        homophily=args.homophily,
        minority_fraction=args.minority_fraction,
        rng_seed=args.seed,
    )
    graph = generate(cfg)
    save_graph(graph, args.output)
    logger.info(f"✓ Generated N={graph.node_count}, |E|={graph.edge_count} → {args.output}")


def cmd_stats(args: argparse.Namespace) -> None:
    report = structural(load_graph(args.graph))
    _emit_json(report.to_dict(), args.output)


def cmd_sample(args: argparse.Namespace) -> None:
    graph = load_graph(args.graph)
    seeds = sample(graph, _sampler_spec(args))
    names = graph.node_names or tuple(str(v) for v in range(graph.node_count))
    text = "\n".join(names[v] for v in seeds.order) + "\n"
    if args.output:
        _write_text(args.output, text)
        logger.info(f"✓ Wrote {len(seeds)} seed nodes to {args.output}")
    else:
        sys.stdout.write(text)


def cmd_classify(args: argparse.Namespace) -> None:
    graph = load_graph(args.graph)
    relaxation = RelaxationParams(iterations=args.iterations, beta0=args.beta0, decay=args.decay)
    outcome = classify(graph, _sampler_spec(args), relaxation)
    payload = {
        "method": args.method,
        "p": args.fraction,
        "seeds": len(outcome.seeds),
        "priors": list(outcome.model.priors.prior),
        "cond": [list(row) for row in outcome.model.cond],
        "seed_subgraph_edge_count": outcome.model.training_edges,
        **outcome.report.to_dict(),
    }
    _emit_json(payload, args.output)


def cmd_sweep(args: argparse.Namespace) -> None:
    cfg = load_experiment_config(args.config)
    raw = sweep(cfg, workers=args.workers, progress=not args.no_progress)
    logger.info(f"✓ Sweep wrote {len(raw)} rows to {cfg.output_dir}")


def cmd_summarize(args: argparse.Namespace) -> None:
    summary = summarize_min_sample(read_results(args.results), threshold=args.threshold)
    if args.output:
        write_csv(summary, args.output)
        logger.info(f"✓ Wrote minimal sample sizes to {args.output}")
    else:
        sys.stdout.write(summary.to_string(index=False) + "\n")


def cmd_plot_data(args: argparse.Namespace) -> None:
    panels = plot_data(read_results(args.results), args.figure, threshold=args.threshold)
    write_plot_data(panels, args.output_dir, args.figure)


# ===== PARSER =====


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netinfer", description="Sampling and relational inference benchmarks on attributed networks")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("generate", help="Generate a homophilic scale-free network")
    gen.add_argument("--nodes", type=int, default=DEFAULT_NODES, help="Number of nodes N")
    gen.add_argument("--m", type=int, default=DEFAULT_M, help="Edges added per arriving node")
    gen.add_argument("--homophily", type=float, required=True, help="Homophily H in [0, 1]")
    gen.add_argument("--minority-fraction", type=float, default=DEFAULT_MINORITY_FRACTION, help="Fraction of class-1 nodes")
    gen.add_argument("--seed", type=int, default=0, help="RNG seed")
    gen.add_argument("--output", type=Path, required=True, help="Graph file to write")
    gen.set_defaults(handler=cmd_generate)

    stats = commands.add_parser("stats", help="Structural report of a graph as JSON")
    stats.add_argument("graph", type=Path)
    stats.add_argument("--output", type=Path, help="JSON file (default: stdout)")
    stats.set_defaults(handler=cmd_stats)

    smp = commands.add_parser("sample", help="Draw a seed set")
    smp.add_argument("graph", type=Path)
    _add_sampler_arguments(smp)
    smp.add_argument("--output", type=Path, help="Seed list file (default: stdout)")
    smp.set_defaults(handler=cmd_sample)

    cls = commands.add_parser("classify", help="Sample, learn and infer once; print the classification report")
    cls.add_argument("graph", type=Path)
    _add_sampler_arguments(cls)
    cls.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS, help="Relaxation iterations T")
    cls.add_argument("--beta0", type=float, default=DEFAULT_BETA0, help="Initial blending weight")
    cls.add_argument("--decay", type=float, default=DEFAULT_DECAY, help="Blending decay per iteration")
    cls.add_argument("--output", type=Path, help="JSON file (default: stdout)")
    cls.set_defaults(handler=cmd_classify)

    swp = commands.add_parser("sweep", help="Run an experiment grid from a JSON/TOML config")
    swp.add_argument("--config", type=Path, required=True)
    swp.add_argument("--workers", type=int, default=None, help="Worker processes (default: NETINFER_THREADS or auto)")
    swp.add_argument("--no-progress", action="store_true", help="Hide the progress bar")
    swp.set_defaults(handler=cmd_sweep)

    summ = commands.add_parser("summarize", help="Minimal sample size per sampler")
    summ.add_argument("--results", type=Path, required=True, help="Raw or aggregate results CSV")
    summ.add_argument("--threshold", type=float, default=DEFAULT_ERROR_THRESHOLD, help="Per-class error bound")
    summ.add_argument("--output", type=Path, help="CSV file (default: stdout)")
    summ.set_defaults(handler=cmd_summarize)

    plot = commands.add_parser("plot-data", help="Write plot-ready tables for a figure")
    plot.add_argument("--results", type=Path, required=True, help="Raw or aggregate results CSV")
    plot.add_argument("--figure", required=True, help=f"One of: {', '.join(PLOT_FIGURES)}")
    plot.add_argument("--threshold", type=float, default=DEFAULT_ERROR_THRESHOLD, help="Error bound for min_sample_bars")
    plot.add_argument("--output-dir", type=Path, required=True)
    plot.set_defaults(handler=cmd_plot_data)

    return parser


def _add_sampler_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", required=True, help=f"One of: {', '.join(SAMPLER_METHODS)}")
    parser.add_argument("--fraction", type=float, required=True, help="Target node fraction p")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    parser.add_argument("--ci-radius", type=int, default=DEFAULT_CI_RADIUS, help="Collective influence ball radius")
    parser.add_argument("--damping", type=float, default=DEFAULT_PAGERANK_DAMPING, help="PageRank damping")
    parser.add_argument("--tol", type=float, default=DEFAULT_PAGERANK_TOL, help="PageRank tolerance")


def _sampler_spec(args: argparse.Namespace) -> SamplerSpec:
    return SamplerSpec(
        method=args.method,
        p=args.fraction,
        rng_seed=args.seed,
        ci_radius=args.ci_radius,
        pagerank_damping=args.damping,
        pagerank_tol=args.tol,
    )


def _emit_json(payload: dict, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(to_json(payload) + "\n")
    elif not save_json(payload, output):
        raise OutputError(f"cannot write {output}")


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e


# ===== MAIN =====


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse has already printed usage or help
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR
    logging.basicConfig(level=resolve_log_level(args.verbose), format=LOG_FORMAT)

    try:
        args.handler(args)
        return EXIT_OK
    except (InputError, OutputError) as e:
        logger.error(f"{e}")
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception(f"Internal error: {e}")
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
