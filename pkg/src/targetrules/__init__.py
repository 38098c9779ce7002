"""Targeted sequential rule mining over frequency or utility databases."""

from .dataio import (
    DatasetFormat,
    format_results,
    format_sequence_database,
    parse_query_rule,
    parse_sequence_database,
    read_sequence_database,
)
from .errors import (
    ConfigError,
    InvalidRuleError,
    ParseError,
    TargetRuleError,
    UniverseTooLargeError,
)
from .miner import MiningConfig, MiningStats, TargetRuleResult, mine_target_rules
from .model import (
    Itemset,
    Metric,
    QueryRule,
    Rule,
    Sequence,
    SequenceDatabase,
    attr_rule,
    confidence,
    contains_rule,
    support,
)
from .oracle import OracleConfig, enumerate_target_rules
from .preprocess import Pruning
from .similarity import SimilarityMetric

__version__ = "0.1.0"
