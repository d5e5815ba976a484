"""
Bottleneck Paths - Command Line Front End

    python -m bottleneck gen uniform-random --n 100 --m 500 --seed 7 -o g.txt
    python -m bottleneck solve g.txt --algo recursive --stats summary
    python -m bottleneck check --seeds 100
    python -m bottleneck bench --sizes 1000 10000 --k-sweep 2 8 32 128

Exit codes: 0 success, 1 failed check or unexpected error, 2 usage or
input error.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from bottleneck import __version__
from bottleneck.core.config import settings
from bottleneck.core.exceptions import BottleneckError, GraphFormatError, InvalidInstanceError
from bottleneck.core.graph import INF, BottleneckResult, SsbpInstance, ssbp_to_csssbp
from bottleneck.core.graph_io import format_value, read_graph, serialize_graph
from bottleneck.services import baselines
from bottleneck.services.bench import BenchConfig, format_records, format_table, run_bench
from bottleneck.services.checker import run_check
from bottleneck.services.generators import GenSpec, generate
from bottleneck.services.instrumentation import CounterSet
from bottleneck.services.solver import SolverConfig, solve_csssbp, solve_ssbp

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# ============================================================
# Subcommands
# ============================================================
def cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        family=args.family,
        n=args.n,
        m=args.m,
        rows=args.rows,
        cols=args.cols,
        layers=args.layers,
        width=args.width,
        weights=args.weights,
        lo=args.lo,
        hi=args.hi,
        seed=args.seed if args.seed is not None else settings.DEFAULT_SEED,
    )
    text = serialize_graph(generate(spec))
    if args.output is None:
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
        logger.info(f"Wrote {spec.family} graph to {args.output}")
    return EXIT_OK


def _format_result(result: BottleneckResult) -> str:
    return "\n".join(f"{v} {format_value(dv)}" for v, dv in enumerate(result))


def cmd_solve(args: argparse.Namespace) -> int:
    parsed = read_graph(args.input)
    cfg = SolverConfig.from_settings(k=args.k, seed=args.seed)
    if args.stats != "none" and args.algo == "recursive" and not cfg.counters_enabled:
        logger.warning("Stats requested but counters are disabled; evaluation counts will read zero")
    stats_block: Optional[str] = None
    counters = CounterSet()

    if parsed.h is not None:
        inst = parsed.as_csssbp()
        if args.algo == "recursive":
            result, stats = solve_csssbp(inst, cfg)
            stats_block = stats.to_report(args.stats) if args.stats != "none" else None
        elif args.algo == "dijkstra":
            result = baselines.dijkstra_csssbp(inst, counters)
        else:
            result = baselines.oracle_csssbp(inst)
    else:
        ssbp = SsbpInstance(parsed.graph, args.source)
        if args.algo == "recursive":
            result, stats = solve_ssbp(ssbp, cfg)
            stats_block = stats.to_report(args.stats) if args.stats != "none" else None
        elif args.algo == "dijkstra":
            result = baselines.dijkstra_ssbp(ssbp, counters)
        elif parsed.graph.n <= settings.PATH_ORACLE_MAX_NODES:
            result = baselines.oracle_paths_ssbp(ssbp)
        else:
            d = list(baselines.oracle_csssbp(ssbp_to_csssbp(ssbp)))
            d[args.source] = INF
            result = BottleneckResult(d)

    if args.algo == "dijkstra" and args.stats != "none":
        stats_block = "\n".join(f"{key}={value}" for key, value in counters.as_dict().items())

    print(_format_result(result))
    if stats_block is not None:
        print("---")
        print(stats_block)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    parsed = read_graph(args.input) if args.input else None
    report = run_check(args.seeds, parsed, source=args.source, k=args.k)
    print(report.render())
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_bench(args: argparse.Namespace) -> int:
    cfg = BenchConfig(
        sizes=args.sizes,
        densities=args.densities,
        k_sweep=args.k_sweep or [],
        repeats=args.repeats,
        seed=args.seed if args.seed is not None else settings.DEFAULT_SEED,
        naive=args.naive,
    )
    rows = run_bench(cfg)
    if args.format == "records":
        print(format_records(rows))
    else:
        print(format_table(rows))
    return EXIT_OK


# ============================================================
# Argument Parsing
# ============================================================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bottleneck",
        description=f"{settings.PROJECT_NAME}: single-source bottleneck paths",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph in the text format")
    gen.add_argument("family", choices=["uniform-random", "grid", "path", "complete", "layered-dag"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--m", type=int)
    gen.add_argument("--rows", type=int)
    gen.add_argument("--cols", type=int)
    gen.add_argument("--layers", type=int)
    gen.add_argument("--width", type=int)
    gen.add_argument("--weights", choices=["uniform", "ranks"], default="uniform")
    gen.add_argument("--lo", type=float, default=0.0)
    gen.add_argument("--hi", type=float, default=1.0)
    gen.add_argument("--seed", type=int)
    gen.add_argument("-o", "--output", type=Path, help="output path (default stdout)")
    gen.set_defaults(handler=cmd_gen)

    solve = sub.add_parser("solve", help="solve SSBP (or CSSSBP when the file has an h section)")
    solve.add_argument("input", type=Path)
    solve.add_argument("--algo", choices=["recursive", "dijkstra", "oracle"], default="recursive")
    solve.add_argument("--source", type=int, default=0)
    solve.add_argument("--k", type=int)
    solve.add_argument("--seed", type=int)
    solve.add_argument("--stats", choices=["none", "summary", "per-call"], default="none")
    solve.set_defaults(handler=cmd_solve)

    check = sub.add_parser("check", help="cross-check the recursive solver against the baselines")
    check.add_argument("input", type=Path, nargs="?")
    check.add_argument("--seeds", type=int, default=10)
    check.add_argument("--source", type=int, default=0)
    check.add_argument("--k", type=int)
    check.set_defaults(handler=cmd_check)

    bench = sub.add_parser("bench", help="benchmark sweep over sizes, densities and k")
    bench.add_argument("--sizes", type=int, nargs="+", default=[1000])
    bench.add_argument("--densities", type=float, nargs="+", default=[4.0])
    bench.add_argument("--k-sweep", type=int, nargs="+")
    bench.add_argument("--repeats", type=int, default=1)
    bench.add_argument("--seed", type=int)
    bench.add_argument("--naive", action="store_true", help="add rows for the evaluate-everything split")
    bench.add_argument("--format", choices=["table", "records"], default="table")
    bench.set_defaults(handler=cmd_bench)
    return parser


def _configure_logging() -> None:
    level = logging.getLevelName(settings.LOG_LEVEL)
    if not isinstance(level, int):
        raise ValueError(f"unknown log level {settings.LOG_LEVEL!r}")
    logging.basicConfig(level=level)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        _configure_logging()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        return args.handler(args)
    except (GraphFormatError, InvalidInstanceError, ValidationError) as e:
        first = str(e).splitlines()[0]
        print(f"error: {first}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BottleneckError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILED
    except Exception as e:
        logger.error(f"Unexpected failure: {e}", exc_info=True)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
