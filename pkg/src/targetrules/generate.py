"""Seeded synthetic sequence databases."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ConfigError
from .model import Itemset, Metric, Sequence, SequenceDatabase


@dataclass(frozen=True)
class GeneratorParams:
    sequences: int = 100
    items: int = 20
    max_itemsets: int = 6
    max_items_per_itemset: int = 3
    attr_min: int = 1
    attr_max: int = 5

    def __post_init__(self):
        if self.sequences < 0:
            raise ConfigError("sequences must be >= 0")
        if self.items < 1 or self.max_itemsets < 1 or self.max_items_per_itemset < 1:
            raise ConfigError("items, max_itemsets and max_items_per_itemset must be >= 1")
        if not 0 <= self.attr_min <= self.attr_max:
            raise ConfigError("need 0 <= attr_min <= attr_max")


# Average shape of the 20K-sequence synthetic benchmark: ~27 itemsets of
# ~4.3 items per sequence over ~7.5K items.
SYN20K = GeneratorParams(sequences=20_000, items=7_500, max_itemsets=53,
                         max_items_per_itemset=8, attr_min=1, attr_max=10)


def generate_database(params: GeneratorParams, seed: int,
                      metric: Metric = Metric.UTILITY) -> SequenceDatabase:
    """Uniform random database; identical ``(params, seed, metric)`` give identical data.

    Item ids run from 1 to ``params.items``.  Under the frequency metric every
    attribute is 1.
    """
    rng = random.Random(seed)
    population = range(1, params.items + 1)
    widest = min(params.max_items_per_itemset, params.items)
    utility = metric is Metric.UTILITY
    sequences = []
    for sid in range(params.sequences):
        itemsets = []
        for _ in range(rng.randint(1, params.max_itemsets)):
            items = tuple(sorted(rng.sample(population, rng.randint(1, widest))))
            if utility:
                attrs = tuple(rng.randint(params.attr_min, params.attr_max) for _ in items)
            else:
                attrs = (1,) * len(items)
            itemsets.append(Itemset(items, attrs))
        sequences.append(Sequence(tuple(itemsets), sid))
    return SequenceDatabase(tuple(sequences))
