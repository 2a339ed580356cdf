import io

import numpy as np
import pytest

from investnet import (EdgePair, MalformedRowError, MissingColumnError,
                       StartupRecord, drop_self_loops, load_exclusions,
                       parse_edge_list, parse_startup_table, preprocess,
                       records_to_edge_list, write_edge_list)
from conftest import DATA_DIR

HEADER = ("startup_name,category/_text,description,location/_text,"
          "founder/_text,investors/_text\n")


def parse_table(body: str):
    return parse_startup_table(io.StringIO(HEADER + body))


def test_parse_row_with_founder_and_investor_lists():
    rows = parse_table(
        "bridestory,Weddings,Wedding vendor catalog,Jakarta,"
        "Kevin Mintaraga; Etienne Emile,William E Wijaya\n")
    (rec,) = rows
    assert rec.startup_name == "bridestory"
    assert rec.founders == ("Kevin Mintaraga", "Etienne Emile")
    assert rec.investors == ("William E Wijaya",)
    assert rec.location == "Jakarta"


def test_parse_empty_investor_cell():
    (rec,) = parse_table("Imagi Visualize,Fashion,Visual shopping,Jakarta,"
                         "Christian W,\n")
    assert rec.investors == ()


def test_parse_quoted_description_with_comma():
    (rec,) = parse_table('Acme,Retail,"Buy cheap, sell dear",Jakarta,F1,I1\n')
    assert rec.description == "Buy cheap, sell dear"
    assert rec.investors == ("I1",)


def test_parse_header_only():
    assert parse_table("") == []


def test_parse_missing_required_column():
    with pytest.raises(MissingColumnError):
        parse_startup_table(io.StringIO("startup_name,founder/_text\nA,B\n"))
    with pytest.raises(MissingColumnError):
        parse_startup_table(io.StringIO(""))


def test_parse_optional_columns_default_empty():
    stream = io.StringIO("startup_name,investors/_text\nAcme,I1; I2\n")
    (rec,) = parse_startup_table(stream)
    assert rec.category == rec.description == rec.location == ""
    assert rec.founders == ()
    assert rec.investors == ("I1", "I2")


def test_parse_malformed_row_reports_line():
    with pytest.raises(MalformedRowError) as err:
        parse_table("Acme,Retail,Desc,Jakarta,F1,I1\nBad,row\n")
    assert err.value.line_number == 3


def make_record(name, investors=("X",)):
    return StartupRecord(startup_name=name, investors=tuple(investors))


def test_preprocess_drops_investorless_and_duplicates():
    records = [make_record("A"), make_record("B", ()), make_record("C")]
    kept, log = preprocess(records)
    assert [r.startup_name for r in kept] == ["A", "C"]
    assert log.dropped_no_investor == 1
    assert log.output_count == 2

    kept, log = preprocess([make_record("Tokopedia", ("X",)),
                            make_record("Tokopedia", ("Y",))])
    assert len(kept) == 1
    assert kept[0].investors == ("X",)  # first occurrence wins
    assert log.dropped_duplicate == 1


def test_preprocess_exclusions():
    records = [make_record("Fraudster", ("X",)),
               make_record("Honest", ("BadInvestor", "GoodInvestor")),
               make_record("OnlyBad", ("BadInvestor",))]
    kept, log = preprocess(records, frozenset({"Fraudster", "BadInvestor"}))
    assert [r.startup_name for r in kept] == ["Honest"]
    assert kept[0].investors == ("GoodInvestor",)
    assert log.dropped_excluded == 1
    assert log.dropped_no_investor == 1  # OnlyBad lost its one investor
    assert log.output_count == 1


def test_preprocess_idempotent_and_log_reconciles():
    rng = np.random.default_rng(4)
    for _ in range(30):
        records = [make_record(f"s{rng.integers(0, 8)}",
                               tuple(f"i{j}" for j in range(rng.integers(0, 3))))
                   for _ in range(12)]
        once, log = preprocess(records)
        assert log.input_count == len(records)
        assert log.output_count == len(once)
        twice, log2 = preprocess(once)
        assert twice == once
        assert log2.output_count == log2.input_count


def test_load_exclusions():
    stream = io.StringIO("# comment\nAcme\n\n  Spacy Name  \n")
    assert load_exclusions(stream) == frozenset({"Acme", "Spacy Name"})


def test_records_to_edge_list_combinations():
    pairs, log = records_to_edge_list([make_record("A", ("X", "Y"))])
    assert pairs == [EdgePair("A", "X"), EdgePair("A", "Y")]
    assert log.input_count == 2 and log.dropped_self_loop == 0


def test_records_to_edge_list_drops_self_loops():
    pairs, log = records_to_edge_list([make_record("A", ("A",))])
    assert pairs == []
    assert log.dropped_self_loop == 1
    assert log.output_count == 0


def test_records_to_edge_list_keeps_duplicates():
    pairs, _ = records_to_edge_list([make_record("A", ("X", "X"))])
    assert len(pairs) == 2


def test_parse_edge_list_fixture():
    with open(DATA_DIR / "edge_pairs_small.csv", encoding="utf-8",
              newline="") as fh:
        pairs = parse_edge_list(fh)
    assert pairs[0] == EdgePair("SGRECX", "YuhanHu")
    assert pairs[1] == EdgePair("SGRECX", "RichardKlatt")
    assert pairs[2] == EdgePair("3D Matters", "yongtaikok")
    assert len(pairs) == 6


def test_parse_edge_list_errors():
    assert parse_edge_list(
        io.StringIO("startup_name,investor_name\n")) == []
    with pytest.raises(MalformedRowError) as err:
        parse_edge_list(io.StringIO("startup_name,investor_name\na,b,c\n"))
    assert err.value.line_number == 2
    with pytest.raises(MissingColumnError):
        parse_edge_list(io.StringIO("foo,bar\na,b\n"))
    with pytest.raises(MalformedRowError):
        parse_edge_list(io.StringIO("startup_name,investor_name\nA,\n"))


def test_edge_list_round_trip():
    records = [make_record("Acme, Inc.", ("X", 'quoted "investor"')),
               make_record("Beta", ("Y",))]
    pairs, _ = records_to_edge_list(records)
    buffer = io.StringIO()
    write_edge_list(pairs, buffer)
    buffer.seek(0)
    assert parse_edge_list(buffer) == pairs


def test_drop_self_loops_helper():
    pairs = [EdgePair("A", "A"), EdgePair("A", "B")]
    kept, log = drop_self_loops(pairs)
    assert kept == [EdgePair("A", "B")]
    assert log.dropped_self_loop == 1
    assert log.output_count == 1
