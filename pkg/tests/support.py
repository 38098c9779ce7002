"""Shared builders for the tests: the lettered example and random instances."""

import random
from pathlib import Path

from targetrules import Metric, QueryRule, SequenceDatabase

DATA = Path(__file__).resolve().parent.parent / "data"

# a..g -> 1..7, attributes as printed in the example database
TABLE1_ROWS = [
    [{1: 2, 4: 1}, {1: 1, 2: 1, 5: 4}, {3: 4, 7: 1}],
    [{2: 1}, {1: 2}, {3: 4}, {4: 2, 5: 1, 7: 1}],
    [{2: 1}, {4: 7}, {7: 2}],
    [{5: 1}, {1: 2, 6: 2}],
    [{4: 3}, {3: 1}, {1: 2}, {5: 1}],
]


def table1(metric=Metric.UTILITY) -> SequenceDatabase:
    if metric is Metric.FREQUENCY:
        return SequenceDatabase.from_rows([[list(s) for s in row] for row in TABLE1_ROWS])
    return SequenceDatabase.from_rows(TABLE1_ROWS)


def random_db(rng: random.Random, metric: Metric, max_items=8, max_seqs=8,
              max_itemsets=6, max_width=3, attr_range=(1, 5)) -> SequenceDatabase:
    n_items = rng.randint(2, max_items)
    rows = []
    for _ in range(rng.randint(1, max_seqs)):
        row = []
        for _ in range(rng.randint(1, max_itemsets)):
            items = rng.sample(range(1, n_items + 1), rng.randint(1, min(max_width, n_items)))
            if metric is Metric.UTILITY:
                row.append({i: rng.randint(*attr_range) for i in items})
            else:
                row.append(items)
        rows.append(row)
    return SequenceDatabase.from_rows(rows)


def random_query(rng: random.Random, db: SequenceDatabase, max_side=2) -> QueryRule:
    universe = sorted(db.item_universe)
    while True:
        picked = rng.sample(universe, min(len(universe), rng.randint(1, 2 * max_side)))
        cut = rng.randint(0, len(picked))
        qx, qy = picked[:cut][:max_side], picked[cut:][:max_side]
        if qx or qy:
            return QueryRule(frozenset(qx), frozenset(qy))
