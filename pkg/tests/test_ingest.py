import pytest
from hypothesis import given, strategies as st

from defect_smells.errors import (
    DuplicateFile,
    MalformedDocument,
    MalformedLine,
    MissingColumn,
    NegativeCount,
    NonNumericValue,
    RaggedRow,
    UnknownCategory,
)
from defect_smells.ingest import (
    WARNING_CATEGORIES,
    ChangeRecord,
    ClassWarningRecord,
    FileMetricRecord,
    format_change_log,
    format_class_warnings,
    format_file_metrics,
    normalize_path,
    parse_change_log,
    parse_class_warnings,
    parse_file_metrics,
)


def test_file_metrics_single_row():
    recs = parse_file_metrics("file_path,loc,methods_per_class\na/File1.cs,100,3\n")
    assert len(recs) == 1
    assert recs[0].file_path == "a/File1.cs"
    assert recs[0].loc == 100
    assert recs[0].metrics == (("loc", 100), ("methods_per_class", 3.0))


def test_file_metrics_header_only():
    assert parse_file_metrics("file_path,loc\n") == []


def test_file_metrics_duplicate_is_case_insensitive():
    with pytest.raises(DuplicateFile) as exc:
        parse_file_metrics("file_path,loc\na/File1.cs,1\nA\\file1.cs,2\n")
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "text, error",
    [
        ("path,loc\nx,1\n", MissingColumn),
        ("file_path,size\nx,1\n", MissingColumn),
        ("file_path,loc\nx,abc\n", NonNumericValue),
        ("file_path,loc,depth\nx,1,nan\n", NonNumericValue),
        ("file_path,loc\nx,1,2\n", RaggedRow),
    ],
)
def test_file_metrics_errors(text, error):
    with pytest.raises(error):
        parse_file_metrics(text)


def test_metric_order_follows_header():
    recs = parse_file_metrics("depth,file_path,loc\n2.5,src/a.cs,10\n")
    assert recs[0].metric_names == ("depth", "loc")


WARN_DOC = """<Targets>
  <Target Name="File1.cs">
    <Class Name="Class1"><Issue Category="Design" Count="3"/></Class>
  </Target>
</Targets>"""


def test_class_warnings_defaults_absent_categories():
    (rec,) = parse_class_warnings(WARN_DOC)
    assert rec.file_path == "File1.cs" and rec.class_name == "Class1"
    assert rec.counts["Design"] == 3
    assert all(rec.counts[c] == 0 for c in WARNING_CATEGORIES if c != "Design")
    assert set(rec.counts) == set(WARNING_CATEGORIES)


def test_class_warnings_empty_targets():
    assert parse_class_warnings("<Targets/>") == []


def test_repeated_issue_categories_are_summed():
    doc = ('<Targets><Target Name="a.cs"><Class Name="A">'
           '<Issue Category="Usage" Count="2"/><Issue Category="Usage" Count="5"/>'
           "</Class></Target></Targets>")
    assert parse_class_warnings(doc)[0].counts["Usage"] == 7


@pytest.mark.parametrize(
    "issue, error",
    [
        ('<Issue Category="Velocity" Count="1"/>', UnknownCategory),
        ('<Issue Category="Design" Count="-2"/>', NegativeCount),
        ('<Issue Category="Design" Count="2.5"/>', MalformedDocument),
    ],
)
def test_class_warning_errors(issue, error):
    doc = f'<Targets><Target Name="a.cs"><Class Name="A">{issue}</Class></Target></Targets>'
    with pytest.raises(error):
        parse_class_warnings(doc)


def test_malformed_xml():
    with pytest.raises(MalformedDocument):
        parse_class_warnings("<Targets><Target>")


def test_change_log_line():
    (c,) = parse_change_log('{"commit":"c1","message":"fix DE-101 crash","files":["a/File1.cs"]}\n')
    assert c == ChangeRecord("c1", "fix DE-101 crash", ("a/File1.cs",))


def test_change_log_empty():
    assert parse_change_log("") == []


def test_change_log_bad_line_reports_line_number():
    with pytest.raises(MalformedLine) as exc:
        parse_change_log("not-json\n")
    assert exc.value.line == 1
    with pytest.raises(MalformedLine) as exc:
        parse_change_log('{"commit":"c","message":"m","files":[]}\n\n{"commit":"c2"}\n')
    assert exc.value.line == 3


def test_normalize_path():
    assert normalize_path(".\\src\\\\Core/./a.cs") == "src/Core/a.cs"
    assert normalize_path("/abs/x.cs") == "abs/x.cs"


_segment = st.text(alphabet="abcXYZ._-", min_size=1, max_size=6)


@given(st.lists(st.one_of(_segment, st.just("."), st.just("")), max_size=6), st.sampled_from(["/", "\\"]))
def test_normalize_path_idempotent(parts, sep):
    p = sep.join(parts)
    assert normalize_path(normalize_path(p)) == normalize_path(p)


_names = st.lists(st.from_regex(r"[a-z][a-z0-9_]{0,8}", fullmatch=True), unique=True, max_size=4)


@given(
    names=_names.filter(lambda ns: "loc" not in ns and "file_path" not in ns),
    rows=st.lists(
        st.tuples(st.integers(0, 10**6), st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=4, max_size=4)),
        max_size=8,
    ),
)
def test_file_metrics_round_trip(names, rows):
    records = [
        FileMetricRecord(f"m/f{i}.cs", (("loc", loc),) + tuple(zip(names, vals[: len(names)])))
        for i, (loc, vals) in enumerate(rows)
    ]
    if not records:
        assert parse_file_metrics(format_file_metrics(records)) == []
        return
    assert parse_file_metrics(format_file_metrics(records)) == records


@given(st.lists(st.dictionaries(st.sampled_from(WARNING_CATEGORIES), st.integers(0, 99)), max_size=6))
def test_class_warnings_round_trip(count_list):
    records = [ClassWarningRecord(f"d{i % 3}/f{i % 3}.cs", f"C{i}", c) for i, c in enumerate(count_list)]
    assert parse_class_warnings(format_class_warnings(records)) == records


@given(st.lists(st.tuples(st.text(min_size=1), st.text(), st.lists(_segment, max_size=3)), max_size=5))
def test_change_log_round_trip(items):
    changes = [ChangeRecord(cid, msg, tuple(f"src/{f}x.cs" for f in files)) for cid, msg, files in items]
    assert parse_change_log(format_change_log(changes)) == changes


def test_parsing_is_pure():
    text = "file_path,loc,x\nb.cs,2,1.5\na.cs,1,0\n"
    assert parse_file_metrics(text) == parse_file_metrics(text)
