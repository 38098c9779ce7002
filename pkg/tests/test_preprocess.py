import random
from itertools import chain, combinations

import pytest

from targetrules import Metric, QueryRule, Rule
from targetrules.model import ITEM_X, ITEM_Y, attr_rule, confidence, contains_rule, support
from targetrules.oracle import OracleConfig, enumerate_target_rules
from targetrules.preprocess import (
    Pruning,
    preprocess,
    prune_global_items,
    remove_invalid_sequences,
    tub_left,
    tub_right,
    ub,
)
from support import random_db, random_query, table1

A, B, C, D, E, F, G, Z = 1, 2, 3, 4, 5, 6, 7, 99
NAMES = {ITEM_X: "iX", ITEM_Y: "iY", **{i: "abcdefg"[i - 1] for i in range(1, 8)}}


def render(seq, metric=Metric.UTILITY):
    parts = []
    for itemset in seq:
        if metric is Metric.UTILITY:
            parts.append(" ".join(f"{NAMES[i]}[{a}]" for i, a in itemset))
        else:
            parts.append(" ".join(NAMES[i] for i in itemset.items))
    return "⟨" + ", ".join(f"({p})" for p in parts) + "⟩"


def modified(metric, q=QueryRule({A}, {C, G})):
    return preprocess(table1(metric), q, metric)


def row(mdb, sid):
    return next(s for s in mdb.database if s.sid == sid)


def test_remove_invalid_sequences_examples():
    db = table1()
    kept, table = remove_invalid_sequences(db, QueryRule({A}, {C, G}))
    assert [s.sid for s in kept] == [0, 1, 3, 4]
    assert table[0] == (1, 3)
    kept, _ = remove_invalid_sequences(db, QueryRule(set(), {G}))
    assert len(kept) == 5
    kept, _ = remove_invalid_sequences(db, QueryRule({Z}, {A}))
    assert len(kept) == 0


def test_modified_rows_matching_the_printed_table():
    mdb = modified(Metric.UTILITY)
    assert render(row(mdb, 1)) == "⟨(b[1]), (iX[2]), (iY[5]), (d[2] e[1])⟩"
    assert render(row(mdb, 3)) == "⟨(e[1]), (f[2]), (iX[0])⟩"


def test_modified_rows_with_documented_deviations():
    mdb = modified(Metric.UTILITY)
    # second iX carries the prefix max of a over itemsets 1..2, which is 2
    assert render(row(mdb, 0)) == "⟨(d[1]), (iX[2]), (b[1] e[4]), (iX[2]), (iY[5])⟩"
    # the query item c is stripped from the antecedent-only sequence too
    assert render(row(mdb, 4)) == "⟨(d[3]), (e[1]), (iX[0])⟩"


def test_frequency_rewrite_of_s1():
    mdb = modified(Metric.FREQUENCY)
    assert render(row(mdb, 0), Metric.FREQUENCY) == "⟨(d), (iX), (b e), (iY)⟩"
    assert [render(s, Metric.FREQUENCY) for s in mdb.database] == [
        "⟨(d), (iX), (b e), (iY)⟩",
        "⟨(b), (iX), (iY), (d e)⟩",
        "⟨(e), (f), (iX)⟩",
        "⟨(d), (e), (iX)⟩",
    ]
    assert mdb.antecedent_only_ids == {3, 4}
    assert mdb.query_support == 2


def test_ub_examples():
    db = table1()
    s1 = db.sequences[0]
    # 2+1+1+1+4+4+1
    assert ub(E, s1, Metric.UTILITY) == 14
    assert ub(E, s1, Metric.FREQUENCY) == 1
    assert ub(F, s1, Metric.UTILITY) == 0


def test_tub_examples():
    mdb = modified(Metric.FREQUENCY)
    fr = Metric.FREQUENCY
    assert (tub_left(E, mdb, fr), tub_left(B, mdb, fr), tub_left(F, mdb, fr)) == (1, 2, 0)
    assert (tub_right(E, mdb, fr), tub_right(B, mdb, fr), tub_right(F, mdb, fr)) == (2, 1, 0)


def test_prune_global_items_examples():
    fr = Metric.FREQUENCY
    mdb = modified(fr)
    _, basic = prune_global_items(mdb, 2, fr, Pruning.BASIC)
    assert basic.removed_items == {F}
    pruned, full = prune_global_items(mdb, 2, fr, Pruning.FULL)
    assert full.removed_items == {D, F}
    assert full.left_blocked == {E}
    assert full.right_blocked == {B}
    assert D not in pruned.database.item_universe
    for variant in Pruning:
        _, report = prune_global_items(mdb, 0, fr, variant)
        assert not report.removed_items


def test_report_bounds_agree_with_direct_scans():
    for metric in Metric:
        mdb = modified(metric)
        _, report = prune_global_items(mdb, 0, metric, Pruning.FULL)
        for item, (u, left, right) in report.per_item.items():
            assert u == sum(ub(item, s, metric) for s in mdb.database)
            assert left == tub_left(item, mdb, metric)
            assert right == tub_right(item, mdb, metric)


def test_emptied_itemsets_are_dropped():
    fr = Metric.FREQUENCY
    pruned, _ = prune_global_items(modified(fr), 2, fr, Pruning.FULL)
    s1 = row(pruned, 0)
    assert render(s1, fr) == "⟨(iX), (b e), (iY)⟩"
    assert pruned.key_positions[0] == (1, 3)


def _subsets(items, cap=2):
    return chain.from_iterable(combinations(items, k) for k in range(cap + 1))


def _lifted(query, li, ri):
    x = {ITEM_X} | set(li)
    y = ({ITEM_Y} if query.qy else set()) | set(ri)
    return Rule(x, y)


@pytest.mark.parametrize("metric", list(Metric))
def test_rule_values_survive_the_rewrite(metric):
    rng = random.Random(11 if metric is Metric.UTILITY else 12)
    checked = 0
    for _ in range(60):
        db = random_db(rng, metric, max_items=6, max_seqs=6, max_itemsets=5)
        q = random_query(rng, db)
        mdb = preprocess(db, q, metric)
        free = sorted(db.item_universe - q.items)
        for li in _subsets(free):
            for ri in _subsets([i for i in free if i not in li]):
                orig = Rule(q.qx | set(li), q.qy | set(ri))
                if not orig.antecedent or not orig.consequent:
                    continue
                lifted = _lifted(q, li, ri)
                assert attr_rule(lifted, mdb.database, metric) == attr_rule(orig, db, metric)
                assert support(lifted, mdb.database) == support(orig, db)
                if support(orig.antecedent, db):
                    assert confidence(lifted, mdb.database) == confidence(orig, db)
                checked += 1
    assert checked > 500


@pytest.mark.parametrize("metric", list(Metric))
def test_bounds_are_sound(metric):
    rng = random.Random(21 if metric is Metric.UTILITY else 22)
    for _ in range(60):
        db = random_db(rng, metric, max_items=6, max_seqs=6, max_itemsets=5)
        q = random_query(rng, db)
        mdb = preprocess(db, q, metric)
        rules = enumerate_target_rules(db, q, OracleConfig(metric, 0, 0, 6, 6))
        for r in rules:
            for i in set(r.antecedent) - q.qx:
                assert r.attr <= sum(ub(i, s, metric) for s in mdb.database)
                assert r.attr <= tub_left(i, mdb, metric)
            for i in set(r.consequent) - q.qy:
                assert r.attr <= sum(ub(i, s, metric) for s in mdb.database)
                assert r.attr <= tub_right(i, mdb, metric)


def test_antecedent_only_rows_never_hold_the_first_rule():
    mdb = modified(Metric.UTILITY)
    for s in mdb.database:
        held = contains_rule(s, Rule({ITEM_X}, {ITEM_Y}))
        assert held == (s.sid not in mdb.antecedent_only_ids)
