"""Variant comparison: expansions and rule counts per threshold.

The table is written as CSV; ``plot_bench`` renders the same rows as a
figure next to it.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, replace

from .miner import MiningConfig, mine_target_rules
from .preprocess import Pruning

VARIANTS = (Pruning.FILTER, Pruning.BASIC, Pruning.FULL)
COLUMNS = ("threshold", "variant", "expansions", "rules", "elapsed_ms")


class VariantDisagreement(AssertionError):
    """Pruning variants returned different rule sets for one threshold."""


@dataclass(frozen=True)
class BenchRow:
    threshold: int
    variant: Pruning
    expansions: int
    rules: int
    elapsed_ms: float


def run_bench_variants(db, query, config: MiningConfig, thresholds) -> list:
    rows = []
    for threshold in thresholds:
        reference = None
        for variant in VARIANTS:
            cfg = replace(config, min_attr=threshold, pruning=variant)
            start = time.perf_counter()
            results, stats = mine_target_rules(db, query, cfg)
            elapsed = (time.perf_counter() - start) * 1000.0
            if reference is None:
                reference = results
            elif results != reference:
                raise VariantDisagreement(
                    f"{variant.value} disagrees with {VARIANTS[0].value} at {threshold}")
            rows.append(BenchRow(threshold, variant, stats.expansions, len(results), elapsed))
    return rows


def format_bench_table(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow((row.threshold, row.variant.value, row.expansions, row.rules,
                         f"{row.elapsed_ms:.3f}"))
    return buf.getvalue()


def plot_bench(rows, path) -> None:
    """Expansions per threshold, one line per variant, saved to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    markers = {Pruning.FILTER: "o", Pruning.BASIC: "s", Pruning.FULL: "^"}
    for variant in VARIANTS:
        points = [(r.threshold, r.expansions) for r in rows if r.variant is variant]
        if not points:
            continue
        xs, ys = zip(*points)
        ax.plot(xs, [max(y, 1) for y in ys], marker=markers[variant], label=variant.value)
    ax.set_yscale("log")
    ax.set_xlabel("minimum attribute threshold")
    ax.set_ylabel("expansions")
    ax.legend(title="pruning")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
