import pytest

from targetrules import Metric, QueryRule, SequenceDatabase
from support import table1

# item ids for the lettered running example
A, B, C, D, E, F, G = range(1, 8)


@pytest.fixture
def util_db():
    return table1(Metric.UTILITY)


@pytest.fixture
def freq_db():
    return table1(Metric.FREQUENCY)


@pytest.fixture
def query():
    return QueryRule({A}, {C, G})
