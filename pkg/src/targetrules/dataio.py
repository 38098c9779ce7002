"""Text formats: sequence databases, query rules, token maps and results.

Databases use the SPMF line layout.  Frequency files list item ids; utility
files write each entry as ``ITEM[ATTR]``.  In both, ``-1`` closes an itemset
and ``-2`` closes the sequence::

    1 4 -1 1 2 5 -1 3 7 -1 -2
    1[2] 4[1] -1 1[1] 2[1] 5[4] -1 3[4] 7[1] -1 -2 SUtility:13
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import InvalidRuleError, ParseError
from .model import Itemset, QueryRule, Sequence, SequenceDatabase


class DatasetFormat(enum.Enum):
    FREQ_SPMF = "freq"
    UTIL_SPMF = "util"


_UTIL_TOKEN = re.compile(r"(\d+)\[(\d+)\]\Z")
_SUTILITY = re.compile(r"SUtility:(\d+)\Z")


def _parse_line(line: str, lineno: int, fmt: DatasetFormat, sid: int) -> Sequence:
    tokens = line.split()
    if not tokens:
        raise ParseError("empty line", lineno)
    itemsets = []
    current_items, current_attrs = [], []
    end = None
    for pos, token in enumerate(tokens):
        if token == "-2":
            end = pos
            break
        if token == "-1":
            if not current_items:
                raise ParseError("empty itemset", lineno)
            itemsets.append(Itemset(tuple(current_items), tuple(current_attrs)))
            current_items, current_attrs = [], []
            continue
        if fmt is DatasetFormat.UTIL_SPMF:
            m = _UTIL_TOKEN.match(token)
            if not m:
                raise ParseError(f"malformed token {token!r}", lineno)
            item, attr = int(m.group(1)), int(m.group(2))
        else:
            if not token.isdigit():
                raise ParseError(f"malformed token {token!r}", lineno)
            item, attr = int(token), 1
        if current_items:
            if item == current_items[-1] or item in current_items:
                raise ParseError(f"duplicate item {item} in itemset", lineno)
            if item < current_items[-1]:
                raise ParseError(f"items not ascending at {item}", lineno)
        current_items.append(item)
        current_attrs.append(attr)
    if end is None:
        raise ParseError("missing -2 terminator", lineno)
    if current_items:
        raise ParseError("itemset not closed by -1 before -2", lineno)
    if not itemsets:
        raise ParseError("sequence has no itemsets", lineno)
    seq = Sequence(tuple(itemsets), sid)
    trailing = tokens[end + 1:]
    if trailing:
        m = _SUTILITY.match(trailing[0]) if fmt is DatasetFormat.UTIL_SPMF else None
        if m is None or len(trailing) > 1:
            raise ParseError(f"unexpected tokens after -2: {' '.join(trailing)!r}", lineno)
        if int(m.group(1)) != seq.total_attr:
            raise ParseError(
                f"SUtility {m.group(1)} does not match total {seq.total_attr}", lineno)
    return seq


def parse_sequence_database(text: str, fmt: DatasetFormat) -> SequenceDatabase:
    sequences = [
        _parse_line(line, lineno, fmt, lineno - 1)
        for lineno, line in enumerate(text.splitlines(), start=1)
    ]
    return SequenceDatabase(tuple(sequences))


def read_sequence_database(path, fmt: DatasetFormat) -> SequenceDatabase:
    with open(path, encoding="utf-8") as fh:
        return parse_sequence_database(fh.read(), fmt)


def format_sequence_database(db: SequenceDatabase, fmt: DatasetFormat) -> str:
    lines = []
    for seq in db:
        parts = []
        for itemset in seq:
            if fmt is DatasetFormat.UTIL_SPMF:
                parts.extend(f"{i}[{a}]" for i, a in itemset)
            else:
                parts.extend(map(str, itemset.items))
            parts.append("-1")
        parts.append("-2")
        if fmt is DatasetFormat.UTIL_SPMF:
            parts.append(f"SUtility:{seq.total_attr}")
        lines.append(" ".join(parts))
    return "".join(line + "\n" for line in lines)


def _parse_side(text: str, tokens: Optional[Mapping[str, int]]) -> list:
    text = text.strip()
    if not text:
        return []
    items = []
    for raw in text.split(","):
        token = raw.strip()
        if token.isdigit():
            item = int(token)
        elif tokens is not None and token in tokens:
            item = tokens[token]
        else:
            raise ParseError(f"bad item {token!r} in query")
        if item in items:
            raise ParseError(f"duplicate item {item} in query")
        items.append(item)
    return items


def parse_query_rule(text: str, tokens: Optional[Mapping[str, int]] = None) -> QueryRule:
    """Parse ``ANT => CONS``; ``tokens`` optionally maps names to item ids."""
    if text.count("=>") != 1:
        raise ParseError(f"query needs exactly one '=>': {text!r}")
    left, right = text.split("=>")
    qx, qy = _parse_side(left, tokens), _parse_side(right, tokens)
    try:
        return QueryRule(frozenset(qx), frozenset(qy))
    except InvalidRuleError as exc:
        raise ParseError(str(exc)) from exc


def parse_token_map(text: str) -> dict:
    """Read ``id<TAB>token`` lines into an id -> token mapping."""
    mapping = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].isdigit() or not parts[1]:
            raise ParseError("expected 'id<TAB>token'", lineno)
        item = int(parts[0])
        if item in mapping or parts[1] in mapping.values():
            raise ParseError(f"duplicate entry for {line!r}", lineno)
        mapping[item] = parts[1]
    return mapping


def assign_token_ids(tokens: Iterable[str]) -> dict:
    """Number distinct tokens 1.. in lexicographic order (token -> id)."""
    return {tok: i for i, tok in enumerate(sorted(set(tokens)), start=1)}


def format_ratio(value: Fraction) -> str:
    """Exact decimal with four places, rounding half up."""
    value = Fraction(value)
    if value < 0:
        return "-" + format_ratio(-value)
    scaled = math.floor(value * 10000 + Fraction(1, 2))
    return f"{scaled // 10000}.{scaled % 10000:04d}"


def format_results(rules, include_sim: bool = False,
                   names: Optional[Mapping[int, str]] = None) -> str:
    def render(items):
        if names is None:
            return ",".join(map(str, items))
        return ",".join(names.get(i, str(i)) for i in items)

    out = []
    for r in rules:
        line = (f"{render(r.antecedent)} ==> {render(r.consequent)} "
                f"#ATTR: {r.attr} #CONF: {format_ratio(r.conf)}")
        if include_sim and r.sim is not None:
            line += f" #SIM: {format_ratio(r.sim)}"
        out.append(line + "\n")
    return "".join(out)
