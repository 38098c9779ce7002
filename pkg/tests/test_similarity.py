from fractions import Fraction
from types import SimpleNamespace

import pytest

from targetrules import Metric, MiningConfig, QueryRule, SimilarityMetric, mine_target_rules
from targetrules.errors import ConfigError, SimilarityDomainError
from targetrules.similarity import SimilarityConfig, is_useful, prune_by_similarity, tros, trjs
from support import table1

TRJS, TROS = SimilarityMetric.TRJS, SimilarityMetric.TROS


def test_trjs_examples():
    assert trjs(2, 2) == 1
    # sup({a,e} -> {c,g}) = 1 against sup(qr) = 2
    assert trjs(2, 1) == Fraction(1, 2)
    with pytest.raises(SimilarityDomainError):
        trjs(2, 3)
    with pytest.raises(SimilarityDomainError):
        trjs(2, 0)


def test_tros_examples():
    assert tros(2, 2) == 1
    assert tros(2, 1) == Fraction(2, 3)
    assert tros(5, 5) == 1


def test_is_useful_examples():
    assert not is_useful(1, SimilarityConfig(TRJS, Fraction(6, 10), 2))
    assert is_useful(1, SimilarityConfig(TROS, Fraction(6, 10), 2))
    for sup in (1, 2, 3):
        assert is_useful(sup, SimilarityConfig(TRJS, 0, 3))


def test_prune_examples():
    branch = lambda sup: SimpleNamespace(rule_sids=tuple(range(sup)))
    assert prune_by_similarity(branch(1), SimilarityConfig(TRJS, Fraction(6, 10), 2))
    assert not prune_by_similarity(branch(2), SimilarityConfig(TRJS, 1, 2))
    assert not prune_by_similarity(branch(1), SimilarityConfig(TROS, 0, 7))


def test_config_validation():
    with pytest.raises(ConfigError):
        SimilarityConfig(TRJS, Fraction(3, 2), 2)
    with pytest.raises(ConfigError):
        SimilarityConfig(TRJS, 0, 0)


@pytest.mark.parametrize("qr", range(1, 8))
def test_range_and_ordering(qr):
    for tr in range(1, qr + 1):
        j, d = trjs(qr, tr), tros(qr, tr)
        assert 0 < j <= d <= 1


def test_similarity_column_on_running_example():
    q = QueryRule({1}, {3, 7})
    cfg = MiningConfig(Metric.UTILITY, 0, 0, similarity=TROS, min_sim=Fraction(3, 4))
    results, _ = mine_target_rules(table1(), q, cfg)
    assert results
    for r in results:
        assert r.sim >= Fraction(3, 4)
    plain, _ = mine_target_rules(table1(), q, MiningConfig(Metric.UTILITY, 0, 0))
    assert len(plain) > len(results)
