"""Command-line driver: mine, oracle, gen and bench subcommands."""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .bench import format_bench_table, plot_bench, run_bench_variants
from .dataio import (
    DatasetFormat,
    format_results,
    format_sequence_database,
    parse_query_rule,
    parse_token_map,
    read_sequence_database,
)
from .errors import TargetRuleError
from .generate import GeneratorParams, generate_database
from .miner import MiningConfig, mine_target_rules
from .model import Metric
from .oracle import OracleConfig, enumerate_target_rules
from .preprocess import Pruning
from .similarity import SimilarityMetric


def _ratio(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1]: {text}")
    return value


def _non_negative(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return value


def _positive(text):
    value = _non_negative(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _threshold_list(text):
    try:
        return [_non_negative(part) for part in text.split(",") if part.strip()]
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad threshold list {text!r}: {exc}")


def _add_mining_args(p, with_pruning=True):
    p.add_argument("--input", required=True, help="sequence database file")
    p.add_argument("--format", choices=[f.value for f in DatasetFormat], default="util")
    p.add_argument("--query", required=True, help='query rule, e.g. "1 => 3,7"')
    p.add_argument("--metric", choices=[m.value for m in Metric],
                   help="attribute metric (defaults to the file format)")
    p.add_argument("--min-attr", type=_non_negative, default=0)
    p.add_argument("--min-conf", type=_ratio, default=Fraction(0))
    p.add_argument("--similarity", choices=[s.value for s in SimilarityMetric], default="none")
    p.add_argument("--min-sim", type=_ratio, default=Fraction(0))
    if with_pruning:
        p.add_argument("--pruning", choices=[v.value for v in Pruning], default="full")
    p.add_argument("--token-map", help="id<TAB>token file for named items")
    p.add_argument("--output", help="result file (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="targetrules",
                                     description="Targeted sequential rule mining.")
    sub = parser.add_subparsers(dest="command", required=True)

    mine = sub.add_parser("mine", help="mine target rules")
    _add_mining_args(mine)
    mine.add_argument("--stats", action="store_true", help="write run stats to stderr")

    oracle = sub.add_parser("oracle", help="brute-force reference enumeration")
    _add_mining_args(oracle, with_pruning=False)
    oracle.add_argument("--max-ant", type=_positive, default=4)
    oracle.add_argument("--max-cons", type=_positive, default=4)

    gen = sub.add_parser("gen", help="write a seeded random database")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--sequences", type=_non_negative, default=100)
    gen.add_argument("--items", type=_positive, default=20)
    gen.add_argument("--max-itemsets", type=_positive, default=6)
    gen.add_argument("--max-items-per-itemset", type=_positive, default=3)
    gen.add_argument("--attr-min", type=_non_negative, default=1)
    gen.add_argument("--attr-max", type=_non_negative, default=5)
    gen.add_argument("--format", choices=[f.value for f in DatasetFormat], default="util")
    gen.add_argument("--output", help="database file (default: standard output)")

    bench = sub.add_parser("bench", help="compare pruning variants over thresholds")
    _add_mining_args(bench, with_pruning=False)
    bench.add_argument("--thresholds", type=_threshold_list, required=True,
                       help="comma-separated minimum attribute values")
    bench.add_argument("--plot", help="PNG path for the expansions figure")
    return parser


def _write(text, path, stdout):
    if path is None:
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load(args):
    fmt = DatasetFormat(args.format)
    names = None
    tokens = None
    if args.token_map:
        with open(args.token_map, encoding="utf-8") as fh:
            names = parse_token_map(fh.read())
        tokens = {tok: item for item, tok in names.items()}
    db = read_sequence_database(args.input, fmt)
    query = parse_query_rule(args.query, tokens)
    metric = Metric(args.metric) if args.metric else Metric(fmt.value)
    return db, query, metric, names


def _mining_config(args, metric, pruning=Pruning.FULL):
    return MiningConfig(
        metric=metric,
        min_attr=args.min_attr,
        min_conf=args.min_conf,
        pruning=pruning,
        similarity=SimilarityMetric(args.similarity),
        min_sim=args.min_sim,
    )


def run_mine(args, stdout, stderr) -> int:
    db, query, metric, names = _load(args)
    config = _mining_config(args, metric, Pruning(args.pruning))
    start = time.perf_counter()
    results, stats = mine_target_rules(db, query, config)
    elapsed = (time.perf_counter() - start) * 1000.0
    include_sim = config.similarity is not SimilarityMetric.NONE
    _write(format_results(results, include_sim, names), args.output, stdout)
    if args.stats:
        stderr.write(
            f"expansions={stats.expansions}\n"
            f"candidates={stats.candidates}\n"
            f"rules={len(results)}\n"
            f"sequences_kept={stats.sequences_kept}\n"
            f"items_removed={stats.items_removed}\n"
            f"elapsed_ms={elapsed:.3f}\n")
    return 0


def run_oracle(args, stdout, stderr) -> int:
    db, query, metric, names = _load(args)
    config = OracleConfig(
        metric=metric,
        min_attr=args.min_attr,
        min_conf=args.min_conf,
        max_ant_size=args.max_ant,
        max_cons_size=args.max_cons,
        similarity=SimilarityMetric(args.similarity),
        min_sim=args.min_sim,
    )
    results = enumerate_target_rules(db, query, config)
    include_sim = config.similarity is not SimilarityMetric.NONE
    _write(format_results(results, include_sim, names), args.output, stdout)
    return 0


def run_gen(args, stdout, stderr) -> int:
    params = GeneratorParams(
        sequences=args.sequences,
        items=args.items,
        max_itemsets=args.max_itemsets,
        max_items_per_itemset=args.max_items_per_itemset,
        attr_min=args.attr_min,
        attr_max=args.attr_max,
    )
    fmt = DatasetFormat(args.format)
    db = generate_database(params, args.seed, Metric(fmt.value))
    _write(format_sequence_database(db, fmt), args.output, stdout)
    return 0


def run_bench(args, stdout, stderr) -> int:
    db, query, metric, _ = _load(args)
    rows = run_bench_variants(db, query, _mining_config(args, metric), args.thresholds)
    _write(format_bench_table(rows), args.output, stdout)
    if args.plot:
        plot_bench(rows, args.plot)
    return 0


COMMANDS = {"mine": run_mine, "oracle": run_oracle, "gen": run_gen, "bench": run_bench}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return COMMANDS[args.command](args, stdout, stderr)
    except (TargetRuleError, OSError) as exc:
        stderr.write(f"targetrules: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
