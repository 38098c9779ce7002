"""Similarity of a target rule to its query rule, measured on supports.

Both metrics only shrink as a rule grows, so a branch whose rule already
falls below the threshold can be abandoned together with its descendants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, SimilarityDomainError


class SimilarityMetric(enum.Enum):
    NONE = "none"
    TRJS = "trjs"  # Jaccard-style
    TROS = "tros"  # Dice-style


def _check_domain(qr_sup: int, tr_sup: int) -> None:
    if not 0 < tr_sup <= qr_sup:
        raise SimilarityDomainError(
            f"need 0 < rule support <= query support, got {tr_sup} and {qr_sup}")


def trjs(qr_sup: int, tr_sup: int) -> Fraction:
    _check_domain(qr_sup, tr_sup)
    return Fraction(tr_sup, qr_sup)


def tros(qr_sup: int, tr_sup: int) -> Fraction:
    _check_domain(qr_sup, tr_sup)
    return Fraction(2 * tr_sup, qr_sup + tr_sup)


@dataclass(frozen=True)
class SimilarityConfig:
    metric: SimilarityMetric
    min_rs: Fraction
    qr_sup: int

    def __post_init__(self):
        object.__setattr__(self, "min_rs", Fraction(self.min_rs))
        if not 0 <= self.min_rs <= 1:
            raise ConfigError(f"similarity threshold {self.min_rs} outside [0, 1]")
        if self.metric is not SimilarityMetric.NONE and self.qr_sup <= 0:
            raise ConfigError("similarity needs a query rule with positive support")

    def value(self, tr_sup: int) -> Fraction:
        if self.metric is SimilarityMetric.TRJS:
            return trjs(self.qr_sup, tr_sup)
        if self.metric is SimilarityMetric.TROS:
            return tros(self.qr_sup, tr_sup)
        raise ConfigError("no similarity metric configured")


def is_useful(tr_sup: int, config: SimilarityConfig) -> bool:
    return config.value(tr_sup) >= config.min_rs


def prune_by_similarity(ctx, config: SimilarityConfig) -> bool:
    """True when the branch rooted at ``ctx`` cannot produce useful rules."""
    return not is_useful(len(ctx.rule_sids), config)
