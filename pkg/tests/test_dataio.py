import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from targetrules import Metric, SequenceDatabase, TargetRuleResult
from targetrules.dataio import (
    DatasetFormat,
    assign_token_ids,
    format_ratio,
    format_results,
    format_sequence_database,
    parse_query_rule,
    parse_sequence_database,
    parse_token_map,
    read_sequence_database,
)
from targetrules.errors import ParseError
from support import DATA, random_db, table1

FREQ, UTIL = DatasetFormat.FREQ_SPMF, DatasetFormat.UTIL_SPMF


def test_parse_frequency_line():
    db = parse_sequence_database("1 4 -1 1 2 5 -1 3 7 -1 -2\n", FREQ)
    assert db.sequences[0] == table1(Metric.FREQUENCY).sequences[0]


def test_parse_utility_line():
    db = parse_sequence_database("1[2] 4[1] -1 1[1] 2[1] 5[4] -1 3[4] 7[1] -1 -2", UTIL)
    assert db.sequences[0] == table1().sequences[0]


def test_bundled_files_match_the_example():
    assert read_sequence_database(DATA / "table1_util.txt", UTIL) == table1()
    assert read_sequence_database(DATA / "table1_freq.txt", FREQ) == table1(Metric.FREQUENCY)


@pytest.mark.parametrize("text,fmt,fragment", [
    ("1 1 -1 -2", FREQ, "duplicate"),
    ("2 1 -1 -2", FREQ, "ascending"),
    ("1 -1", FREQ, "-2"),
    ("1 x -1 -2", FREQ, "malformed"),
    ("1[2 -1 -2", UTIL, "malformed"),
    ("1[-2] -1 -2", UTIL, "malformed"),
    ("1 -2", FREQ, "closed"),
    ("-1 -2", FREQ, "empty itemset"),
    ("1[2] -1 -2 SUtility:3", UTIL, "SUtility"),
    ("1 -1 -2 7", FREQ, "after -2"),
    ("", FREQ, None),
])
def test_parse_errors(text, fmt, fragment):
    with pytest.raises(ParseError) as info:
        parse_sequence_database(text + "\n1 -1 -2" if text else "1 -1 -2\n\n", fmt)
    err = info.value
    if fragment:
        assert err.line == 1 and fragment in str(err)
    else:
        assert err.line == 2


def test_sutility_accepted_when_consistent():
    db = parse_sequence_database("1[2] 3[5] -1 -2 SUtility:7", UTIL)
    assert db.sequences[0].total_attr == 7


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([FREQ, UTIL]))
def test_round_trip(seed, fmt):
    metric = Metric.UTILITY if fmt is UTIL else Metric.FREQUENCY
    db = random_db(random.Random(seed), metric)
    text = format_sequence_database(db, fmt)
    again = parse_sequence_database(text, fmt)
    assert again == db
    assert format_sequence_database(again, fmt) == text


def test_query_examples():
    q = parse_query_rule("1 => 3,7")
    assert (q.qx, q.qy) == ({1}, {3, 7})
    q = parse_query_rule("=> 7")
    assert (q.qx, q.qy) == (set(), {7})
    assert parse_query_rule("  1 ,2=>  3 ").qx == {1, 2}


@pytest.mark.parametrize("text", ["1 => 1", "=>", "1 => x", "1,1 => 2", "1 2", "1 => 2 => 3", "-2 => 1"])
def test_query_errors(text):
    with pytest.raises(ParseError):
        parse_query_rule(text)


def test_query_with_tokens():
    q = parse_query_rule("a => c,g", {"a": 1, "c": 3, "g": 7})
    assert (q.qx, q.qy) == ({1}, {3, 7})


def test_token_map():
    names = parse_token_map((DATA / "table1_tokens.tsv").read_text())
    assert names == {i: "abcdefg"[i - 1] for i in range(1, 8)}
    with pytest.raises(ParseError):
        parse_token_map("1\ta\n1\tb\n")
    with pytest.raises(ParseError):
        parse_token_map("one\ta\n")


def test_assign_token_ids_is_lexicographic():
    assert assign_token_ids(["g", "c", "a", "c"]) == {"a": 1, "c": 2, "g": 3}


@pytest.mark.parametrize("value,text", [
    (Fraction(1, 2), "0.5000"),
    (Fraction(1), "1.0000"),
    (Fraction(2, 3), "0.6667"),
    (Fraction(1, 3), "0.3333"),
    (Fraction(1, 20000), "0.0001"),
    (Fraction(3, 20000), "0.0002"),
    (Fraction(0), "0.0000"),
])
def test_format_ratio_half_up(value, text):
    assert format_ratio(value) == text


def test_format_results_examples():
    rules = [TargetRuleResult((1,), (3, 7), 2, Fraction(1, 2))]
    assert format_results(rules) == "1 ==> 3,7 #ATTR: 2 #CONF: 0.5000\n"
    assert format_results([]) == ""
    rules = [TargetRuleResult((1, 2), (3, 7), 2, Fraction(1))]
    assert format_results(rules) == "1,2 ==> 3,7 #ATTR: 2 #CONF: 1.0000\n"


def test_format_results_with_similarity_and_names():
    rules = [TargetRuleResult((1,), (3, 7), 2, Fraction(1, 2), Fraction(2, 3))]
    assert format_results(rules, include_sim=True, names={1: "a", 3: "c", 7: "g"}) == (
        "a ==> c,g #ATTR: 2 #CONF: 0.5000 #SIM: 0.6667\n")
    assert "#SIM" not in format_results(rules)
