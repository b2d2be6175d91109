import io

import hypothesis.strategies as st
import pytest
from hypothesis import given

from triage_miner.errors import (
    DuplicateIdError,
    ParameterError,
    RowError,
    SchemaError,
    UnknownCategoryError,
)
from triage_miner.ingest import (
    Attribute,
    RawBugRow,
    build_codebooks_and_encode,
    codebooks_to_json,
    encode_priority,
    encode_severity,
    parse_csv,
)

COLUMN_MAP = {
    "bug_id": "id",
    "severity": "sev",
    "priority": "pri",
    "component": "comp",
    "operating_system": "os",
    "assignee": "who",
}


def _csv(text: str) -> io.BytesIO:
    return io.BytesIO(text.encode("utf-8"))


def _row(bug_id="1", severity="Normal", priority="P3", component="General",
         operating_system="Linux", assignee="alice") -> RawBugRow:
    return RawBugRow(bug_id, severity, priority, component, operating_system, assignee)


class TestParseCsv:
    def test_direct_field_mapping(self):
        rows = parse_csv(_csv("id,sev,pri,comp,os,who\n42,normal,P3,General,Linux,alice\n"), COLUMN_MAP)
        assert rows == [RawBugRow("42", "normal", "P3", "General", "Linux", "alice")]

    def test_missing_mapped_column_names_it(self):
        bad_map = dict(COLUMN_MAP, severity="severity")
        with pytest.raises(SchemaError, match="severity"):
            parse_csv(_csv("id,sev,pri,comp,os,who\n42,normal,P3,General,Linux,alice\n"), bad_map)

    def test_blank_cell_becomes_unspecified(self):
        rows = parse_csv(_csv("id,sev,pri,comp,os,who\n42,normal,P3,General,,alice\n"), COLUMN_MAP)
        assert rows[0].operating_system == "Unspecified"

    def test_double_dash_cell_becomes_unspecified(self):
        rows = parse_csv(_csv("id,sev,pri,comp,os,who\n42,normal,--,General,Linux,alice\n"), COLUMN_MAP)
        assert rows[0].priority == "Unspecified"

    def test_duplicate_bug_id_names_the_id(self):
        payload = "id,sev,pri,comp,os,who\n7,normal,P3,General,Linux,a\n7,major,P2,Sync,All,b\n"
        with pytest.raises(DuplicateIdError, match="7"):
            parse_csv(_csv(payload), COLUMN_MAP)

    def test_short_row_reports_line_number(self):
        payload = "id,sev,pri,comp,os,who\n1,normal,P3,General,Linux,a\n2,normal,P3\n"
        with pytest.raises(RowError, match="line 3"):
            parse_csv(_csv(payload), COLUMN_MAP)

    def test_empty_bug_id_is_a_row_error(self):
        with pytest.raises(RowError, match="line 2"):
            parse_csv(_csv("id,sev,pri,comp,os,who\n,normal,P3,General,Linux,a\n"), COLUMN_MAP)

    def test_incomplete_column_map_is_a_schema_error(self):
        with pytest.raises(SchemaError, match="assignee"):
            parse_csv(_csv("id\n1\n"), {"bug_id": "id"})

    def test_rows_keep_file_order(self):
        payload = "id,sev,pri,comp,os,who\n" + "".join(
            f"b{i},normal,P3,General,Linux,a\n" for i in range(20)
        )
        rows = parse_csv(_csv(payload), COLUMN_MAP)
        assert [r.bug_id for r in rows] == [f"b{i}" for i in range(20)]

    def test_does_not_close_the_source_stream(self):
        stream = _csv("id,sev,pri,comp,os,who\n1,normal,P3,General,Linux,a\n")
        parse_csv(stream, COLUMN_MAP)
        assert not stream.closed


class TestFixedScales:
    def test_blocker_is_level_one(self):
        assert encode_severity("blocker") == 1

    def test_enhancement_is_level_seven(self):
        assert encode_severity("enhancement") == 7

    def test_severity_lookup_ignores_case(self):
        assert encode_severity("Normal") == 4
        assert encode_severity("  CRITICAL  ") == 2

    def test_priority_endpoints(self):
        assert encode_priority("P1") == 1
        assert encode_priority("P5") == 5

    def test_priority_lookup_ignores_case(self):
        assert encode_priority("p3") == 3

    def test_unknown_severity_carries_the_label(self):
        with pytest.raises(UnknownCategoryError, match="S1"):
            encode_severity("S1")

    def test_unknown_priority_rejected(self):
        with pytest.raises(UnknownCategoryError):
            encode_priority("P6")

    @pytest.mark.parametrize(
        "label,code",
        [("blocker", 1), ("critical", 2), ("major", 3), ("normal", 4),
         ("minor", 5), ("trivial", 6), ("enhancement", 7)],
    )
    def test_full_severity_scale(self, label, code):
        assert encode_severity(label) == code


class TestBuildCodebooks:
    def test_first_appearance_order(self):
        rows = [_row("1", component="General"), _row("2", component="Sync"),
                _row("3", component="General")]
        codebooks, _ = build_codebooks_and_encode(rows)
        assert codebooks[Attribute.COMPONENT].forward == {"General": 1, "Sync": 2}

    def test_singleton_learned_codebooks(self):
        codebooks, records = build_codebooks_and_encode([_row()])
        for attribute in (Attribute.COMPONENT, Attribute.OPERATING_SYSTEM, Attribute.ASSIGNEE):
            assert codebooks[attribute].forward == {list(codebooks[attribute].forward)[0]: 1}
        assert records[0].component_code == records[0].os_code == records[0].assignee_code == 1

    def test_assignee_codes_round_trip(self):
        names = ["ann", "bob", "cal", "dee"]
        rows = [_row(str(i), assignee=names[i % 4]) for i in range(10)]
        codebooks, records = build_codebooks_and_encode(rows)
        book = codebooks[Attribute.ASSIGNEE]
        assert sorted(book.reverse) == [1, 2, 3, 4]
        # independent decode pass: every record decodes to its original label
        for row, record in zip(rows, records):
            assert book.decode(record.assignee_code) == row.assignee

    def test_empty_input_rejected(self):
        with pytest.raises(ParameterError):
            build_codebooks_and_encode([])

    def test_unknown_severity_propagates(self):
        with pytest.raises(UnknownCategoryError):
            build_codebooks_and_encode([_row(severity="catastrophic")])

    def test_case_insensitive_learned_labels_keep_first_casing(self):
        rows = [_row("1", component="General"), _row("2", component="GENERAL")]
        codebooks, records = build_codebooks_and_encode(rows)
        assert codebooks[Attribute.COMPONENT].forward == {"General": 1}
        assert records[0].component_code == records[1].component_code == 1

    def test_codebooks_json_shape(self):
        codebooks, _ = build_codebooks_and_encode([_row()])
        payload = codebooks_to_json(codebooks)
        assert payload["Severity"]["Blocker"] == 1
        assert payload["Priority"]["P5"] == 5
        assert payload["Component"] == {"General": 1}
        assert set(payload) == {"Severity", "Priority", "Component", "OperatingSystem", "Assignee"}


_label = st.text(
    alphabet=st.characters(whitelist_categories=("Lu", "Ll", "Nd"), max_codepoint=0x24F),
    min_size=1,
    max_size=8,
).map(str.strip).filter(bool)


@given(
    components=st.lists(_label, min_size=1, max_size=20),
    oses=st.lists(_label, min_size=1, max_size=20),
    assignees=st.lists(_label, min_size=1, max_size=20),
)
def test_round_trip_and_contiguous_codes(components, oses, assignees):
    n = max(len(components), len(oses), len(assignees))
    rows = [
        _row(
            str(i),
            component=components[i % len(components)],
            operating_system=oses[i % len(oses)],
            assignee=assignees[i % len(assignees)],
        )
        for i in range(n)
    ]
    codebooks, records = build_codebooks_and_encode(rows)
    for attribute in (Attribute.COMPONENT, Attribute.OPERATING_SYSTEM, Attribute.ASSIGNEE):
        book = codebooks[attribute]
        # bijection between forward and reverse
        assert {book.decode(code) for code in book.reverse} == set(book.forward)
        assert {book.encode(label) for label in book.forward} == set(book.reverse)
        # codes are exactly 1..n
        assert sorted(book.reverse) == list(range(1, len(book) + 1))
    # round-trip through every record
    for row, record in zip(rows, records):
        assert codebooks[Attribute.COMPONENT].encode(row.component) == record.component_code
        assert codebooks[Attribute.OPERATING_SYSTEM].encode(row.operating_system) == record.os_code
        assert codebooks[Attribute.ASSIGNEE].encode(row.assignee) == record.assignee_code


@given(st.integers(0, 2**32))
def test_parse_and_encode_are_deterministic(seed):
    import random

    rnd = random.Random(seed)
    lines = ["id,sev,pri,comp,os,who"]
    for i in range(rnd.randint(1, 30)):
        lines.append(
            f"b{i},normal,P{rnd.randint(1, 5)},C{rnd.randint(0, 5)},O{rnd.randint(0, 3)},A{rnd.randint(0, 6)}"
        )
    payload = ("\n".join(lines) + "\n").encode()
    first = parse_csv(io.BytesIO(payload), COLUMN_MAP)
    second = parse_csv(io.BytesIO(payload), COLUMN_MAP)
    assert first == second
    books1, recs1 = build_codebooks_and_encode(first)
    books2, recs2 = build_codebooks_and_encode(second)
    assert recs1 == recs2
    assert all(books1[a].forward == books2[a].forward for a in Attribute)
