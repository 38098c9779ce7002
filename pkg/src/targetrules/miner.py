"""Rule-growth search for target sequential rules.

The search starts from ``{ITEM_X} -> {ITEM_Y}`` in the modified database and
grows rules one item at a time.  Right-expansions come first; once a rule is
left-expanded it stays in the left-only phase, and every added item must sort
above the items already on its side.  Together these make each rule reachable
by exactly one path.

Internally itemset positions are 0-based.  For a rule contained in a sequence
the miner keeps ``px`` (index where the antecedent becomes complete), ``py``
(latest index where the consequent can start; ``n`` for an empty consequent)
and, under the utility metric, the antecedent and consequent values for every
admissible split ``v`` in ``px + 1 .. py``.  Children reuse the parent's
arrays instead of rescanning the sequence.
"""

from __future__ import annotations

import enum
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import ConfigError, InvalidRuleError
from .model import (
    ITEM_X,
    ITEM_Y,
    KeyPositions,
    Metric,
    Phase,
    QueryRule,
    Rule,
    SequenceDatabase,
)
from .preprocess import (
    BoundReport,
    ModifiedDatabase,
    Pruning,
    first_rule,
    preprocess,
    prune_global_items,
)
from .similarity import SimilarityConfig, SimilarityMetric, prune_by_similarity

log = logging.getLogger(__name__)


def as_fraction(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class MiningConfig:
    metric: Metric = Metric.UTILITY
    min_attr: int = 0
    min_conf: Fraction = Fraction(0)
    pruning: Pruning = Pruning.FULL
    similarity: SimilarityMetric = SimilarityMetric.NONE
    min_sim: Fraction = Fraction(0)
    # size caps on the reported rule sides, query items included
    max_antecedent: Optional[int] = None
    max_consequent: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "min_conf", as_fraction(self.min_conf))
        object.__setattr__(self, "min_sim", as_fraction(self.min_sim))
        if self.min_attr < 0:
            raise ConfigError(f"min_attr must be >= 0, got {self.min_attr}")
        if not 0 <= self.min_conf <= 1:
            raise ConfigError(f"min_conf must lie in [0, 1], got {self.min_conf}")
        if not 0 <= self.min_sim <= 1:
            raise ConfigError(f"min_sim must lie in [0, 1], got {self.min_sim}")
        for cap in (self.max_antecedent, self.max_consequent):
            if cap is not None and cap < 1:
                raise ConfigError("size caps must be >= 1")


@dataclass
class MiningStats:
    expansions: int = 0
    candidates: int = 0
    rules_emitted: int = 0
    sequences_kept: int = 0
    items_removed: int = 0


@dataclass(frozen=True)
class TargetRuleResult:
    antecedent: tuple
    consequent: tuple
    attr: int
    conf: Fraction
    sim: Optional[Fraction] = None

    @property
    def key(self):
        return self.antecedent, self.consequent

    def as_rule(self) -> Rule:
        return Rule(self.antecedent, self.consequent)


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class _Span:
    """Occurrence state of one rule in one sequence."""

    __slots__ = ("px", "py", "attr", "pre", "suf")

    def __init__(self, px, py, attr, pre=None, suf=None):
        self.px = px
        self.py = py
        self.attr = attr
        self.pre = pre
        self.suf = suf


class _SeqIndex:
    __slots__ = ("n", "first", "last", "occ", "total")

    def __init__(self, seq, utility: bool):
        first, last = {}, {}
        occ = defaultdict(list) if utility else None
        for pos, itemset in enumerate(seq.itemsets):
            for item, attr in zip(itemset.items, itemset.attrs):
                if item not in first:
                    first[item] = pos
                last[item] = pos
                if utility:
                    occ[item].append((pos, attr))
        self.n = len(seq)
        self.first = first
        self.last = last
        self.occ = occ
        self.total = seq.total_attr if utility else 1


def _prefix_series(occ, lo, hi):
    """Best attribute at positions < v, for v = lo .. hi."""
    out = []
    best = k = 0
    m = len(occ)
    for v in range(lo, hi + 1):
        while k < m and occ[k][0] < v:
            if occ[k][1] > best:
                best = occ[k][1]
            k += 1
        out.append(best)
    return out


def _suffix_series(occ, lo, hi):
    """Best attribute at positions >= v, for v = lo .. hi."""
    out = [0] * (hi - lo + 1)
    best = 0
    k = len(occ) - 1
    for v in range(hi, lo - 1, -1):
        while k >= 0 and occ[k][0] >= v:
            if occ[k][1] > best:
                best = occ[k][1]
            k -= 1
        out[v - lo] = best
    return out


@dataclass
class RuleContext:
    rule: Rule
    rule_sids: tuple
    antecedent_sids: frozenset
    spans: dict = field(repr=False)
    attr: int = 0

    @property
    def support(self) -> int:
        return len(self.rule_sids)

    @property
    def confidence(self) -> Fraction:
        return Fraction(len(self.rule_sids), len(self.antecedent_sids))

    @property
    def per_seq_attr(self) -> dict:
        return {sid: span.attr for sid, span in self.spans.items()}

    @property
    def positions(self) -> dict:
        """1-based key positions per sequence, as in ``model.key_positions``."""
        return {sid: KeyPositions(span.px + 1, span.py + 1)
                for sid, span in self.spans.items()}


@dataclass(frozen=True)
class ExpansionCandidate:
    item: int
    side: Side
    exact_attr: int
    new_rule_sids: tuple
    bound_attr: int
    child: RuleContext = field(repr=False, compare=False)


Observer = Callable[[RuleContext, RuleContext], None]


class TargetRuleMiner:
    """One mining run over a modified database.

    ``report`` carries the left/right-blocked items found by the targeted
    bounds; it is only consulted under ``Pruning.FULL``.
    """

    def __init__(self, mdb: ModifiedDatabase, config: MiningConfig,
                 report: Optional[BoundReport] = None,
                 observer: Optional[Observer] = None,
                 stats: Optional[MiningStats] = None):
        if mdb.metric is not config.metric:
            raise ConfigError("modified database was built for another metric")
        self.mdb = mdb
        self.config = config
        self.query: QueryRule = mdb.query
        self.observer = observer
        self.stats = stats if stats is not None else MiningStats()
        self.utility = config.metric is Metric.UTILITY
        self.full = config.pruning is Pruning.FULL
        self.index = {seq.sid: _SeqIndex(seq, self.utility) for seq in mdb.database}
        item_sids = defaultdict(set)
        for sid, ix in self.index.items():
            for item in ix.first:
                item_sids[item].add(sid)
        self.item_sids = {item: frozenset(s) for item, s in item_sids.items()}
        self.all_sids = frozenset(self.index)
        if self.full and report is not None:
            self.left_blocked = report.left_blocked
            self.right_blocked = report.right_blocked
        else:
            self.left_blocked = self.right_blocked = frozenset()
        self.similarity = None
        if config.similarity is not SimilarityMetric.NONE and mdb.query_support > 0:
            self.similarity = SimilarityConfig(
                config.similarity, config.min_sim, mdb.query_support)
        self.results: list = []

    # -- spans ---------------------------------------------------------

    def _root_span(self, ix: _SeqIndex, has_y: bool) -> Optional[_Span]:
        px = ix.first[ITEM_X]
        if has_y:
            if ITEM_Y not in ix.last:
                return None
            py = ix.last[ITEM_Y]
        else:
            py = ix.n
        if px >= py:
            return None
        if not self.utility:
            return _Span(px, py, 1)
        pre = _prefix_series(ix.occ[ITEM_X], px + 1, py)
        if has_y:
            suf = _suffix_series(ix.occ[ITEM_Y], px + 1, py)
        else:
            suf = [0] * len(pre)
        return _Span(px, py, max(map(sum, zip(pre, suf))), pre, suf)

    def _left_span(self, ix: _SeqIndex, span: _Span, item: int) -> _Span:
        px = max(span.px, ix.first[item])
        if not self.utility:
            return _Span(px, span.py, 1)
        d = px - span.px
        series = _prefix_series(ix.occ[item], px + 1, span.py)
        pre = [a + b for a, b in zip(span.pre[d:], series)]
        suf = span.suf[d:]
        return _Span(px, span.py, max(map(sum, zip(pre, suf))), pre, suf)

    def _right_span(self, ix: _SeqIndex, span: _Span, item: int) -> _Span:
        py = min(span.py, ix.last[item])
        if not self.utility:
            return _Span(span.px, py, 1)
        length = py - span.px
        series = _suffix_series(ix.occ[item], span.px + 1, py)
        pre = span.pre[:length]
        suf = [a + b for a, b in zip(span.suf, series)]
        return _Span(span.px, py, max(map(sum, zip(pre, suf))), pre, suf)

    # -- search --------------------------------------------------------

    def build_first_rule(self) -> Optional[RuleContext]:
        """Context of ``{ITEM_X} -> {ITEM_Y}``, or ``None`` when no sequence holds it."""
        if not self.index:
            return None
        rule = first_rule(self.query)
        has_y = bool(self.query.qy)
        spans = {}
        for sid in sorted(self.index):
            span = self._root_span(self.index[sid], has_y)
            if span is not None:
                spans[sid] = span
        if not spans:
            return None
        return RuleContext(rule, tuple(spans), self.all_sids, spans,
                           sum(s.attr for s in spans.values()))

    def _reported_size(self, rule: Rule):
        ant = len(self.query.qx) + len(rule.antecedent) - 1
        cons = len(self.query.qy) + len(rule.consequent) - (1 if self.query.qy else 0)
        return ant, cons

    def find_expansion_candidates(self, ctx: RuleContext, left: bool = True,
                                  right: bool = True):
        rule = ctx.rule
        ant_size, cons_size = self._reported_size(rule)
        cap_ant, cap_cons = self.config.max_antecedent, self.config.max_consequent
        left = left and bool(rule.consequent) and (cap_ant is None or ant_size < cap_ant)
        right = (right and rule.phase is Phase.RIGHT_OPEN
                 and (cap_cons is None or cons_size < cap_cons))
        lei, rei = [], []
        if not (left or right):
            return lei, rei
        in_rule = rule.antecedent | rule.consequent
        max_x = max(rule.antecedent)
        max_y = max(rule.consequent, default=ITEM_Y)
        left_hits, right_hits = defaultdict(list), defaultdict(list)
        for sid in ctx.rule_sids:
            ix = self.index[sid]
            span = ctx.spans[sid]
            if left:
                py = span.py
                for item, pos in ix.first.items():
                    if pos < py and item > max_x and item >= 0 and item not in in_rule:
                        left_hits[item].append(sid)
            if right:
                px = span.px
                for item, pos in ix.last.items():
                    if pos > px and item > max_y and item >= 0 and item not in in_rule:
                        right_hits[item].append(sid)
        for item in sorted(left_hits):
            if item in self.left_blocked:
                continue
            cand = self._candidate(ctx, item, left_hits[item], Side.LEFT)
            if cand is not None:
                lei.append(cand)
        for item in sorted(right_hits):
            if item in self.right_blocked:
                continue
            cand = self._candidate(ctx, item, right_hits[item], Side.RIGHT)
            if cand is not None:
                rei.append(cand)
        self.stats.candidates += len(lei) + len(rei)
        return lei, rei

    def _candidate(self, ctx: RuleContext, item: int, sids: list,
                   side: Side) -> Optional[ExpansionCandidate]:
        bound = sum(self.index[sid].total for sid in sids)
        if self.full and bound < self.config.min_attr:
            return None
        spans = {}
        if side is Side.LEFT:
            for sid in sids:
                spans[sid] = self._left_span(self.index[sid], ctx.spans[sid], item)
            rule = Rule(ctx.rule.antecedent | {item}, ctx.rule.consequent, Phase.LEFT_ONLY)
            antecedent_sids = ctx.antecedent_sids & self.item_sids[item]
        else:
            for sid in sids:
                spans[sid] = self._right_span(self.index[sid], ctx.spans[sid], item)
            rule = Rule(ctx.rule.antecedent, ctx.rule.consequent | {item}, ctx.rule.phase)
            antecedent_sids = ctx.antecedent_sids
        attr = sum(s.attr for s in spans.values())
        child = RuleContext(rule, tuple(sids), antecedent_sids, spans, attr)
        return ExpansionCandidate(item, side, attr, tuple(sids), bound, child)

    def _antecedent_concrete(self, rule: Rule) -> bool:
        return bool(self.query.qx) or len(rule.antecedent) > 1

    def _emit(self, ctx: RuleContext) -> None:
        if ctx.attr < self.config.min_attr:
            return
        conf = ctx.confidence
        if conf < self.config.min_conf:
            return
        rule = ctx.rule
        ant = tuple(sorted(self.query.qx | (rule.antecedent - {ITEM_X})))
        cons = tuple(sorted(self.query.qy | (rule.consequent - {ITEM_Y})))
        sim = self.similarity.value(ctx.support) if self.similarity else None
        self.results.append(TargetRuleResult(ant, cons, ctx.attr, conf, sim))
        self.stats.rules_emitted += 1

    def _descend(self, parent: RuleContext, cand: ExpansionCandidate) -> None:
        if self.observer is not None:
            self.observer(parent, cand.child)
        if cand.side is Side.LEFT:
            self.left_expand(cand.child)
        else:
            self.right_expand(cand.child)

    def _pruned(self, ctx: RuleContext) -> bool:
        return self.similarity is not None and prune_by_similarity(ctx, self.similarity)

    def left_expand(self, ctx: RuleContext) -> None:
        if not ctx.rule.consequent:
            raise InvalidRuleError("left expansion needs a nonempty consequent")
        self.stats.expansions += 1
        if self._pruned(ctx):
            return
        if self._antecedent_concrete(ctx.rule):
            self._emit(ctx)
        lei, _ = self.find_expansion_candidates(ctx, right=False)
        for cand in lei:
            self._descend(ctx, cand)

    def right_expand(self, ctx: RuleContext) -> None:
        if ctx.rule.phase is not Phase.RIGHT_OPEN:
            raise InvalidRuleError("right expansion after a left expansion")
        self.stats.expansions += 1
        if self._pruned(ctx):
            return
        if self._antecedent_concrete(ctx.rule) and ctx.rule.consequent:
            self._emit(ctx)
        lei, rei = self.find_expansion_candidates(ctx)
        for cand in lei:
            self._descend(ctx, cand)
        for cand in rei:
            self._descend(ctx, cand)

    def run(self) -> list:
        root = self.build_first_rule()
        if root is None or self._pruned(root):
            return []
        if self.query.qx and self.query.qy:
            self._emit(root)
        lei, rei = self.find_expansion_candidates(root)
        for cand in lei:
            self._descend(root, cand)
        for cand in rei:
            self._descend(root, cand)
        return sorted(self.results, key=lambda r: r.key)


def mine_target_rules(db: SequenceDatabase, query: QueryRule, config: MiningConfig,
                      observer: Optional[Observer] = None):
    """All target rules of ``query`` in ``db``, canonically sorted, plus run stats."""
    stats = MiningStats()
    mdb = preprocess(db, query, config.metric)
    stats.sequences_kept = len(mdb.database)
    mdb, report = prune_global_items(mdb, config.min_attr, config.metric, config.pruning)
    stats.items_removed = len(report.removed_items)
    miner = TargetRuleMiner(mdb, config, report, observer, stats)
    results = miner.run()
    log.debug("mined %d rules with %d expansions", len(results), stats.expansions)
    return results, stats
