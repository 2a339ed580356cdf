"""Parsers and preprocessing for the two input file shapes.

Format A is the crawl-shaped startup table (one row per startup, list
cells ";"-separated); format B is the two-column edge list the network is
built from. Both are comma-delimited with standard double-quote quoting
and a header row, UTF-8 only. Names containing ";" are unsupported in
list cells.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .errors import MalformedRowError, MissingColumnError

STARTUP_COLUMN = "startup_name"
INVESTORS_COLUMN = "investors/_text"
OPTIONAL_COLUMNS = {
    "category": "category/_text",
    "description": "description",
    "location": "location/_text",
    "founders": "founder/_text",
}
EDGE_COLUMNS = ("startup_name", "investor_name")
LIST_SEPARATOR = ";"


@dataclass(frozen=True)
class StartupRecord:
    startup_name: str
    category: str = ""
    description: str = ""
    location: str = ""
    founders: tuple[str, ...] = ()
    investors: tuple[str, ...] = ()


@dataclass(frozen=True)
class EdgePair:
    startup_name: str
    investor_name: str


@dataclass(frozen=True)
class PreprocessLog:
    """Audit counts for a preprocessing step; always reconciles:
    input_count == output_count + sum of dropped_* fields."""

    input_count: int
    dropped_no_investor: int = 0
    dropped_duplicate: int = 0
    dropped_self_loop: int = 0
    dropped_excluded: int = 0

    @property
    def output_count(self) -> int:
        return (self.input_count - self.dropped_no_investor
                - self.dropped_duplicate - self.dropped_self_loop
                - self.dropped_excluded)


def _split_list_cell(cell: str) -> tuple[str, ...]:
    return tuple(item.strip() for item in cell.split(LIST_SEPARATOR)
                 if item.strip())


def parse_startup_table(stream: TextIO) -> list[StartupRecord]:
    """Parse a format-A startup table into records.

    Requires the ``startup_name`` and ``investors/_text`` columns; the
    category/description/location/founder columns are optional and default
    to empty. List cells split on ";" with per-item trimming.
    """
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise MissingColumnError(STARTUP_COLUMN)
    header = [h.strip() for h in header]
    col = {name: i for i, name in enumerate(header)}
    for required in (STARTUP_COLUMN, INVESTORS_COLUMN):
        if required not in col:
            raise MissingColumnError(required)

    def cell(row: list[str], name: str) -> str:
        i = col.get(name)
        return row[i].strip() if i is not None else ""

    records = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedRowError(reader.line_num)
        name = cell(row, STARTUP_COLUMN)
        if not name:
            raise MalformedRowError(reader.line_num, "empty startup_name")
        records.append(StartupRecord(
            startup_name=name,
            category=cell(row, OPTIONAL_COLUMNS["category"]),
            description=cell(row, OPTIONAL_COLUMNS["description"]),
            location=cell(row, OPTIONAL_COLUMNS["location"]),
            founders=_split_list_cell(cell(row, OPTIONAL_COLUMNS["founders"])),
            investors=_split_list_cell(cell(row, INVESTORS_COLUMN)),
        ))
    return records


def load_exclusions(stream: TextIO) -> frozenset[str]:
    """Read an exclusion list: one label per line, "#" lines are comments."""
    labels = set()
    for line in stream:
        text = line.strip()
        if text and not text.startswith("#"):
            labels.add(text)
    return frozenset(labels)


def preprocess(records: Sequence[StartupRecord],
               exclusions: frozenset[str] = frozenset(),
               ) -> tuple[list[StartupRecord], PreprocessLog]:
    """Clean a record list for network construction.

    Drops excluded startups and strips excluded investors first, then drops
    records left with no investors (only funded startups take part in the
    network), then drops repeated startup names keeping the first
    occurrence. Idempotent.
    """
    dropped_excluded = 0
    dropped_no_investor = 0
    dropped_duplicate = 0
    seen: set[str] = set()
    kept = []
    for rec in records:
        if rec.startup_name in exclusions:
            dropped_excluded += 1
            continue
        if exclusions:
            investors = tuple(i for i in rec.investors if i not in exclusions)
            if investors != rec.investors:
                rec = StartupRecord(
                    startup_name=rec.startup_name, category=rec.category,
                    description=rec.description, location=rec.location,
                    founders=rec.founders, investors=investors)
        if not rec.investors:
            dropped_no_investor += 1
            continue
        if rec.startup_name in seen:
            dropped_duplicate += 1
            continue
        seen.add(rec.startup_name)
        kept.append(rec)
    log = PreprocessLog(
        input_count=len(records),
        dropped_no_investor=dropped_no_investor,
        dropped_duplicate=dropped_duplicate,
        dropped_excluded=dropped_excluded,
    )
    return kept, log


def records_to_edge_list(records: Sequence[StartupRecord],
                         ) -> tuple[list[EdgePair], PreprocessLog]:
    """Expand records into one (startup, investor) pair per combination.

    Pairs whose investor equals the startup are dropped as self-loops and
    counted. Duplicate pairs are kept; the graph builder collapses them, so
    the difference between pair count and edge count stays observable.
    """
    pairs = []
    dropped_self_loop = 0
    total = 0
    for rec in records:
        for investor in rec.investors:
            total += 1
            if investor == rec.startup_name:
                dropped_self_loop += 1
                continue
            pairs.append(EdgePair(rec.startup_name, investor))
    log = PreprocessLog(input_count=total, dropped_self_loop=dropped_self_loop)
    return pairs, log


def parse_edge_list(stream: TextIO) -> list[EdgePair]:
    """Parse a format-B edge list: header startup_name,investor_name."""
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise MissingColumnError(EDGE_COLUMNS[0])
    header = [h.strip() for h in header]
    if len(header) < 2 or tuple(header[:2]) != EDGE_COLUMNS:
        missing = EDGE_COLUMNS[0] if EDGE_COLUMNS[0] not in header else EDGE_COLUMNS[1]
        raise MissingColumnError(missing)
    if len(header) != 2:
        raise MalformedRowError(1, "edge list must have exactly two columns")
    pairs = []
    for row in reader:
        if not row:
            continue
        if len(row) != 2:
            raise MalformedRowError(reader.line_num)
        left, right = row[0].strip(), row[1].strip()
        if not left or not right:
            raise MalformedRowError(reader.line_num, "empty label")
        pairs.append(EdgePair(left, right))
    return pairs


def drop_self_loops(pairs: Iterable[EdgePair],
                    ) -> tuple[list[EdgePair], PreprocessLog]:
    """Remove pairs whose two labels match; used on raw edge-list input."""
    kept = []
    dropped = 0
    total = 0
    for p in pairs:
        total += 1
        if p.startup_name == p.investor_name:
            dropped += 1
        else:
            kept.append(p)
    return kept, PreprocessLog(input_count=total, dropped_self_loop=dropped)
