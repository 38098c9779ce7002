"""Domain types for sequence databases and partially-ordered sequential rules.

Itemset positions inside a sequence are 1-based in every public function of
this module, so ``key_positions`` and the rule-instance helpers speak the same
index language as the running examples.  Sequence ids are 0-based (the
position of the sequence in its database).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Union

from .errors import (
    InvalidInstanceError,
    InvalidRuleError,
    RuleNotContainedError,
    UndefinedConfidenceError,
)

# Synthetic items that summarise the query antecedent / consequent.  Dataset
# items are non-negative, so both sort below every real item.
ITEM_X = -2
ITEM_Y = -1
RESERVED_ITEMS = frozenset((ITEM_X, ITEM_Y))


class Metric(enum.Enum):
    FREQUENCY = "freq"
    UTILITY = "util"


class Phase(enum.Enum):
    """Whether a rule may still be right-expanded."""

    RIGHT_OPEN = "right-open"
    LEFT_ONLY = "left-only"


@dataclass(frozen=True, slots=True)
class Itemset:
    """Items of one itemset with their attribute values, ascending by item."""

    items: tuple
    attrs: tuple

    def __post_init__(self):
        if len(self.items) != len(self.attrs):
            raise ValueError("items and attrs differ in length")
        if not self.items:
            raise ValueError("empty itemset")
        prev = None
        for item, attr in zip(self.items, self.attrs):
            if prev is not None and item <= prev:
                raise ValueError(f"items not strictly ascending at {item}")
            if attr < 0:
                raise ValueError(f"negative attribute for item {item}")
            prev = item

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Itemset":
        pairs = sorted(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @classmethod
    def of(cls, *items: int) -> "Itemset":
        """Frequency-style itemset: every attribute is 1."""
        items = tuple(sorted(items))
        return cls(items, (1,) * len(items))

    def __contains__(self, item) -> bool:
        return item in self.items

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return zip(self.items, self.attrs)

    def __len__(self) -> int:
        return len(self.items)

    def attr(self, item: int, default: int = 0) -> int:
        try:
            return self.attrs[self.items.index(item)]
        except ValueError:
            return default


@dataclass(frozen=True)
class Sequence:
    itemsets: tuple
    sid: int = 0

    def __post_init__(self):
        if not self.itemsets:
            raise ValueError("a sequence needs at least one itemset")

    def __len__(self) -> int:
        return len(self.itemsets)

    def __iter__(self) -> Iterator[Itemset]:
        return iter(self.itemsets)

    @cached_property
    def items(self) -> frozenset:
        return frozenset(i for itemset in self.itemsets for i in itemset.items)

    @cached_property
    def total_attr(self) -> int:
        return sum(sum(itemset.attrs) for itemset in self.itemsets)


@dataclass(frozen=True)
class SequenceDatabase:
    sequences: tuple

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self.sequences)

    @cached_property
    def item_universe(self) -> frozenset:
        universe = set()
        for seq in self.sequences:
            universe |= seq.items
        return frozenset(universe)

    @classmethod
    def from_rows(cls, rows) -> "SequenceDatabase":
        """Build a database from nested lists.

        Each row is a list of itemsets; an itemset is either a dict
        ``{item: attr}`` or an iterable of bare items (attribute 1).
        """
        sequences = []
        for sid, row in enumerate(rows):
            itemsets = []
            for raw in row:
                if isinstance(raw, dict):
                    itemsets.append(Itemset.from_pairs(raw.items()))
                else:
                    itemsets.append(Itemset.of(*raw))
            sequences.append(Sequence(tuple(itemsets), sid))
        return cls(tuple(sequences))


@dataclass(frozen=True)
class Rule:
    antecedent: frozenset
    consequent: frozenset
    phase: Phase = Phase.RIGHT_OPEN

    def __post_init__(self):
        object.__setattr__(self, "antecedent", frozenset(self.antecedent))
        object.__setattr__(self, "consequent", frozenset(self.consequent))
        overlap = self.antecedent & self.consequent
        if overlap:
            raise InvalidRuleError(
                f"antecedent and consequent share items {sorted(overlap)}")

    @property
    def size(self) -> tuple[int, int]:
        return len(self.antecedent), len(self.consequent)

    def includes(self, other: Union["Rule", "QueryRule"]) -> bool:
        if isinstance(other, QueryRule):
            return other.qx <= self.antecedent and other.qy <= self.consequent
        return (other.antecedent <= self.antecedent
                and other.consequent <= self.consequent)

    def __str__(self) -> str:
        ant = ",".join(map(str, sorted(self.antecedent)))
        cons = ",".join(map(str, sorted(self.consequent)))
        return f"{{{ant}}} -> {{{cons}}}"


@dataclass(frozen=True)
class QueryRule:
    qx: frozenset
    qy: frozenset

    def __post_init__(self):
        object.__setattr__(self, "qx", frozenset(self.qx))
        object.__setattr__(self, "qy", frozenset(self.qy))
        if not self.qx and not self.qy:
            raise InvalidRuleError("query rule has two empty sides")
        if self.qx & self.qy:
            raise InvalidRuleError(
                f"query sides share items {sorted(self.qx & self.qy)}")
        if self.items & RESERVED_ITEMS:
            raise InvalidRuleError("query uses a reserved item id")

    @property
    def items(self) -> frozenset:
        return self.qx | self.qy

    def as_rule(self) -> Rule:
        return Rule(self.qx, self.qy)


class KeyPositions(NamedTuple):
    """Earliest antecedent-complete index and latest consequent-start index.

    An empty antecedent is complete at index 0 and an empty consequent can
    start at ``n + 1`` (an empty suffix); ``None`` means never.
    """

    px: Optional[int]
    py: Optional[int]


class RuleInstanceSets(NamedTuple):
    lris: tuple
    rris: tuple


def _item_attr(item: int, itemset: Itemset, metric: Metric) -> int:
    if metric is Metric.FREQUENCY:
        return 1 if item in itemset else 0
    return itemset.attr(item)


def _check_nonempty(rule: Rule) -> None:
    if not rule.antecedent and not rule.consequent:
        raise InvalidRuleError("rule has two empty sides")


def key_positions(seq: Sequence, rule: Rule) -> KeyPositions:
    n = len(seq)
    px = 0 if not rule.antecedent else None
    if px is None:
        missing = set(rule.antecedent)
        for u, itemset in enumerate(seq.itemsets, start=1):
            missing.difference_update(itemset.items)
            if not missing:
                px = u
                break
    py = n + 1 if not rule.consequent else None
    if py is None:
        missing = set(rule.consequent)
        for v in range(n, 0, -1):
            missing.difference_update(seq.itemsets[v - 1].items)
            if not missing:
                py = v
                break
    return KeyPositions(px, py)


def contains_rule(seq: Sequence, rule: Rule) -> bool:
    _check_nonempty(rule)
    px, py = key_positions(seq, rule)
    return px is not None and py is not None and px < py


def rule_instance_sets(seq: Sequence, rule: Rule) -> RuleInstanceSets:
    if not contains_rule(seq, rule):
        raise RuleNotContainedError(f"sequence {seq.sid} does not contain {rule}")
    px, py = key_positions(seq, rule)
    lris = [px] + [
        i for i in range(px + 1, len(seq) + 1)
        if not rule.antecedent.isdisjoint(seq.itemsets[i - 1].items)
    ]
    rris = [
        i for i in range(1, py)
        if not rule.consequent.isdisjoint(seq.itemsets[i - 1].items)
    ] + [py]
    return RuleInstanceSets(tuple(lris), tuple(rris))


def attr_item(item: int, seq: Sequence, metric: Metric) -> int:
    if metric is Metric.FREQUENCY:
        return 1 if item in seq.items else 0
    return max((itemset.attr(item) for itemset in seq.itemsets), default=0)


def _side_value(items, itemsets, metric: Metric) -> int:
    """Sum over items of their best attribute within ``itemsets``."""
    return sum(
        max((_item_attr(i, s, metric) for s in itemsets), default=0)
        for i in items
    )


def prefix_attr(items, seq: Sequence, li: int, metric: Metric) -> int:
    """Attribute of ``items`` within itemsets 1..li."""
    return _side_value(items, seq.itemsets[:li], metric)


def suffix_attr(items, seq: Sequence, ri: int, metric: Metric) -> int:
    """Attribute of ``items`` within itemsets ri..n."""
    return _side_value(items, seq.itemsets[max(ri - 1, 0):], metric)


def attr_rule_at(rule: Rule, seq: Sequence, li: int, ri: int, metric: Metric) -> int:
    if li >= ri:
        raise InvalidInstanceError(f"instance ({li}, {ri}) needs li < ri")
    if metric is Metric.FREQUENCY:
        return 1
    return (prefix_attr(rule.antecedent, seq, li, metric)
            + suffix_attr(rule.consequent, seq, ri, metric))


def _attr_rule_in_sequence(rule: Rule, seq: Sequence, metric: Metric) -> int:
    if not contains_rule(seq, rule):
        return 0
    if metric is Metric.FREQUENCY:
        return 1
    px, py = key_positions(seq, rule)
    n = len(seq)
    # prefix[u]: per-item best over itemsets 1..u; suffix[v]: over v..n
    prefix = [0] * (n + 1)
    best = dict.fromkeys(rule.antecedent, 0)
    for u in range(1, n + 1):
        itemset = seq.itemsets[u - 1]
        for i in rule.antecedent:
            a = itemset.attr(i)
            if a > best[i]:
                best[i] = a
        prefix[u] = sum(best.values())
    suffix = [0] * (n + 2)
    best = dict.fromkeys(rule.consequent, 0)
    for v in range(n, 0, -1):
        itemset = seq.itemsets[v - 1]
        for j in rule.consequent:
            a = itemset.attr(j)
            if a > best[j]:
                best[j] = a
        suffix[v] = sum(best.values())
    return max(prefix[v - 1] + suffix[v] for v in range(px + 1, py + 1))


def attr_rule_by_instances(rule: Rule, seq: Sequence, metric: Metric) -> int:
    """Per-sequence rule attribute as the best LRIS x RRIS instance."""
    if not contains_rule(seq, rule):
        return 0
    lris, rris = rule_instance_sets(seq, rule)
    return max(
        attr_rule_at(rule, seq, li, ri, metric)
        for li in lris for ri in rris if li < ri
    )


def attr_rule(rule: Rule, scope: Union[Sequence, SequenceDatabase],
              metric: Metric) -> int:
    if isinstance(scope, Sequence):
        return _attr_rule_in_sequence(rule, scope, metric)
    return sum(_attr_rule_in_sequence(rule, seq, metric) for seq in scope)


def support(x: Union[Rule, Iterable[int]], db: SequenceDatabase) -> int:
    if isinstance(x, Rule):
        return sum(1 for seq in db if contains_rule(seq, x))
    items = frozenset(x)
    return sum(1 for seq in db if items <= seq.items)


def confidence(rule: Rule, db: SequenceDatabase) -> Fraction:
    denominator = support(rule.antecedent, db)
    if denominator == 0:
        raise UndefinedConfidenceError(f"antecedent of {rule} never occurs")
    return Fraction(support(rule, db), denominator)
