"""Naive reference enumeration of target rules.

Works on the original database and evaluates every candidate rule with the
plain per-sequence scans in ``model``; nothing from the preprocessing or the
search is reused, so agreement with the miner is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ConfigError, UniverseTooLargeError
from .miner import TargetRuleResult, as_fraction
from .model import (
    Metric,
    QueryRule,
    Rule,
    SequenceDatabase,
    attr_rule,
    attr_rule_by_instances,
    confidence,
    contains_rule,
)
from .similarity import SimilarityMetric, tros, trjs

MAX_UNIVERSE = 16


@dataclass(frozen=True)
class OracleConfig:
    metric: Metric = Metric.UTILITY
    min_attr: int = 0
    min_conf: Fraction = Fraction(0)
    max_ant_size: int = 4
    max_cons_size: int = 4
    similarity: SimilarityMetric = SimilarityMetric.NONE
    min_sim: Fraction = Fraction(0)
    # also recompute each attribute through the rule-instance route
    cross_check: bool = False

    def __post_init__(self):
        object.__setattr__(self, "min_conf", as_fraction(self.min_conf))
        object.__setattr__(self, "min_sim", as_fraction(self.min_sim))
        if self.max_ant_size < 1 or self.max_cons_size < 1:
            raise ConfigError("oracle size caps must be >= 1")


def _subsets(items, max_size):
    for k in range(max_size + 1):
        yield from combinations(items, k)


def enumerate_target_rules(db: SequenceDatabase, query: QueryRule,
                           config: OracleConfig) -> list:
    universe = db.item_universe | query.items
    if len(universe) > MAX_UNIVERSE:
        raise UniverseTooLargeError(
            f"{len(universe)} items; the oracle enumerates at most {MAX_UNIVERSE}")
    free = sorted(universe - query.items)
    qr_sup = sum(1 for seq in db if contains_rule(seq, query.as_rule()))
    results = []
    for extra_x in _subsets(free, config.max_ant_size - len(query.qx)):
        antecedent = query.qx | set(extra_x)
        if not antecedent:
            continue
        rest = [i for i in free if i not in extra_x]
        for extra_y in _subsets(rest, config.max_cons_size - len(query.qy)):
            consequent = query.qy | set(extra_y)
            if not consequent:
                continue
            rule = Rule(antecedent, consequent)
            sup = sum(1 for seq in db if contains_rule(seq, rule))
            if sup == 0:
                continue
            attr = attr_rule(rule, db, config.metric)
            if config.cross_check:
                alt = sum(attr_rule_by_instances(rule, seq, config.metric) for seq in db)
                assert alt == attr, (rule, alt, attr)
            if attr < config.min_attr:
                continue
            conf = confidence(rule, db)
            if conf < config.min_conf:
                continue
            sim = None
            if config.similarity is SimilarityMetric.TRJS:
                sim = trjs(qr_sup, sup)
            elif config.similarity is SimilarityMetric.TROS:
                sim = tros(qr_sup, sup)
            if sim is not None and sim < config.min_sim:
                continue
            results.append(TargetRuleResult(
                tuple(sorted(antecedent)), tuple(sorted(consequent)), attr, conf, sim))
    results.sort(key=lambda r: r.key)
    return results
