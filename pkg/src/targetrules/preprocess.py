"""Query-specific database reduction.

Three steps turn the original database into the smaller database the miner
walks:

1. drop sequences that cannot contain the query antecedent;
2. summarise the query inside each survivor with the reserved items
   ``ITEM_X`` / ``ITEM_Y`` and strip the query's own items;
3. remove items whose attribute upper bounds fall below ``min_attr``.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .model import (
    ITEM_X,
    ITEM_Y,
    RESERVED_ITEMS,
    Itemset,
    KeyPositions,
    Metric,
    QueryRule,
    Rule,
    Sequence,
    SequenceDatabase,
    key_positions,
    prefix_attr,
    rule_instance_sets,
    suffix_attr,
)


class Pruning(enum.Enum):
    FILTER = "filter"  # database rewrite only
    BASIC = "basic"    # plus removal by the basic (SEU-style) bound
    FULL = "full"      # plus the left/right targeted bounds


@dataclass(frozen=True)
class ModifiedDatabase:
    database: SequenceDatabase
    key_positions: Mapping[int, KeyPositions]
    antecedent_only_ids: frozenset
    query_support: int
    query: QueryRule
    metric: Metric

    @property
    def first_rule(self) -> Rule:
        return first_rule(self.query)


@dataclass(frozen=True)
class BoundReport:
    per_item: Mapping[int, tuple] = field(default_factory=dict)  # item -> (ub, tubL, tubR)
    removed_items: frozenset = frozenset()
    left_blocked: frozenset = frozenset()
    right_blocked: frozenset = frozenset()


def first_rule(query: QueryRule) -> Rule:
    """The rule every target rule grows from inside the modified database."""
    return Rule({ITEM_X}, {ITEM_Y} if query.qy else set())


def remove_invalid_sequences(db: SequenceDatabase, query: QueryRule):
    """Keep the sequences holding every antecedent item of ``query``.

    Returns the kept database (original sids preserved) and the key positions
    of the query rule in each kept sequence.
    """
    rule = query.as_rule()
    kept, table = [], {}
    for seq in db:
        if query.qx <= seq.items:
            kept.append(seq)
            table[seq.sid] = key_positions(seq, rule)
    return SequenceDatabase(tuple(kept)), table


def _singleton(item: int, attr: int) -> Itemset:
    return Itemset((item,), (attr,))


def _rewrite(seq: Sequence, query: QueryRule, x_after: dict, y_before: dict,
             append_x=None) -> Sequence:
    strip = query.items
    out = []
    if 0 in x_after:
        out.append(_singleton(ITEM_X, x_after[0]))
    for k, itemset in enumerate(seq.itemsets, start=1):
        if k in y_before:
            out.append(_singleton(ITEM_Y, y_before[k]))
        if strip.isdisjoint(itemset.items):
            out.append(itemset)
        else:
            pairs = [(i, a) for i, a in itemset if i not in strip]
            if pairs:
                out.append(Itemset.from_pairs(pairs))
        if k in x_after:
            out.append(_singleton(ITEM_X, x_after[k]))
    if append_x is not None:
        out.append(_singleton(ITEM_X, append_x))
    return Sequence(tuple(out), seq.sid)


def modify_sequence(seq: Sequence, kp: KeyPositions, query: QueryRule,
                    metric: Metric) -> Sequence:
    px, py = kp
    frequency = metric is Metric.FREQUENCY
    if px is None or py is None or px >= py:
        return _rewrite(seq, query, {}, {}, append_x=1 if frequency else 0)
    if frequency:
        x_after = {px: 1}
        y_before = {py: 1} if query.qy else {}
    else:
        lris, rris = rule_instance_sets(seq, query.as_rule())
        if len(lris) == 1 and len(rris) == 1:
            lris, rris = (px,), (py,)
        x_after = {li: prefix_attr(query.qx, seq, li, metric) for li in lris}
        y_before = ({ri: suffix_attr(query.qy, seq, ri, metric) for ri in rris}
                    if query.qy else {})
    return _rewrite(seq, query, x_after, y_before)


def _summarise(db: SequenceDatabase, query: QueryRule, metric: Metric) -> ModifiedDatabase:
    rule = first_rule(query)
    table, antecedent_only = {}, set()
    for seq in db:
        kp = key_positions(seq, rule)
        table[seq.sid] = kp
        if kp.py is None or kp.px >= kp.py:
            antecedent_only.add(seq.sid)
    return ModifiedDatabase(
        database=db,
        key_positions=table,
        antecedent_only_ids=frozenset(antecedent_only),
        query_support=len(db) - len(antecedent_only),
        query=query,
        metric=metric,
    )


def modify_sequences(kept: SequenceDatabase, table: Mapping[int, KeyPositions],
                     query: QueryRule, metric: Metric) -> ModifiedDatabase:
    rewritten = tuple(modify_sequence(seq, table[seq.sid], query, metric) for seq in kept)
    return _summarise(SequenceDatabase(rewritten), query, metric)


def preprocess(db: SequenceDatabase, query: QueryRule, metric: Metric) -> ModifiedDatabase:
    kept, table = remove_invalid_sequences(db, query)
    return modify_sequences(kept, table, query, metric)


def ub(item: int, seq: Sequence, metric: Metric) -> int:
    if item not in seq.items:
        return 0
    return 1 if metric is Metric.FREQUENCY else seq.total_attr


def _positions(seq: Sequence):
    first, last = {}, {}
    for pos, itemset in enumerate(seq.itemsets, start=1):
        for item in itemset.items:
            first.setdefault(item, pos)
            last[item] = pos
    return first, last


def _bounds(mdb: ModifiedDatabase, metric: Metric):
    ub_sum, tub_l, tub_r = defaultdict(int), defaultdict(int), defaultdict(int)
    for seq in mdb.database:
        first, last = _positions(seq)
        weight = 1 if metric is Metric.FREQUENCY else seq.total_attr
        px, py = mdb.key_positions[seq.sid]
        contained = py is not None and px < py
        for item in first:
            if item in RESERVED_ITEMS:
                continue
            ub_sum[item] += weight
            if contained:
                if first[item] < py:
                    tub_l[item] += weight
                if last[item] > px:
                    tub_r[item] += weight
    return {i: (ub_sum[i], tub_l[i], tub_r[i]) for i in ub_sum}


def tub_left(item: int, mdb: ModifiedDatabase, metric: Metric) -> int:
    total = 0
    for seq in mdb.database:
        px, py = mdb.key_positions[seq.sid]
        if py is None or px >= py:
            continue
        if any(item in seq.itemsets[k].items for k in range(py - 1)):
            total += ub(item, seq, metric)
    return total


def tub_right(item: int, mdb: ModifiedDatabase, metric: Metric) -> int:
    total = 0
    for seq in mdb.database:
        px, py = mdb.key_positions[seq.sid]
        if py is None or px >= py:
            continue
        if any(item in seq.itemsets[k].items for k in range(px, len(seq))):
            total += ub(item, seq, metric)
    return total


def _strip_items(mdb: ModifiedDatabase, removed: frozenset) -> ModifiedDatabase:
    sequences = []
    for seq in mdb.database:
        if removed.isdisjoint(seq.items):
            sequences.append(seq)
            continue
        itemsets = []
        for itemset in seq.itemsets:
            if removed.isdisjoint(itemset.items):
                itemsets.append(itemset)
            else:
                pairs = [(i, a) for i, a in itemset if i not in removed]
                if pairs:
                    itemsets.append(Itemset.from_pairs(pairs))
        sequences.append(Sequence(tuple(itemsets), seq.sid))
    return _summarise(SequenceDatabase(tuple(sequences)), mdb.query, mdb.metric)


def prune_global_items(mdb: ModifiedDatabase, min_attr, metric: Metric,
                       variant: Pruning):
    per_item = _bounds(mdb, metric)
    if variant is Pruning.FILTER:
        return mdb, BoundReport(per_item)
    removed = set()
    left_blocked, right_blocked = set(), set()
    for item, (ub_total, left, right) in per_item.items():
        if ub_total < min_attr:
            removed.add(item)
        elif variant is Pruning.FULL:
            if left < min_attr and right < min_attr:
                removed.add(item)
            elif left < min_attr:
                left_blocked.add(item)
            elif right < min_attr:
                right_blocked.add(item)
    removed = frozenset(removed)
    pruned = _strip_items(mdb, removed) if removed else mdb
    return pruned, BoundReport(per_item, removed, frozenset(left_blocked),
                               frozenset(right_blocked))
