import json
import random

import pytest

from linkplot.table import (
    AuxColumn,
    Column,
    EmptyInput,
    EncodingError,
    LengthMismatch,
    NoCompleteRows,
    NonNumericColumn,
    RaggedRow,
    Table,
    UnknownColumn,
    attach_aux,
    debug_dump,
    numeric_matrix,
    parse_csv,
)


def test_parse_minimal():
    t = parse_csv(b"a,b\n1,2\n3,4")
    assert t.row_count == 2
    assert [c.name for c in t.columns] == ["a", "b"]
    assert all(c.kind == "numeric" for c in t.columns)
    assert t.column("a").values == (1.0, 3.0)
    assert t.column("b").values == (2.0, 4.0)


def test_parse_header_only():
    t = parse_csv(b"x\n")
    assert t.row_count == 0
    assert [c.name for c in t.columns] == ["x"]


def test_mixed_column_is_categorical():
    rows = "\n".join(["1", "foo", "3"] * 17)  # 51 rows, 3 distinct values
    t = parse_csv(f"v\n{rows}".encode())
    assert t.column("v").kind == "categorical"
    assert set(t.column("v").categories) == {"1", "foo", "3"}


def test_reference_reader_cross_check():
    # cell-by-cell comparison against Python's csv module on a 50-row fixture
    import csv as csv_mod
    import io

    random.seed(7)
    lines = ["num,cat,txt"]
    for i in range(50):
        lines.append(f"{i * 0.5},{random.choice('ab')},text-{i}")
    raw = "\n".join(lines)
    t = parse_csv(raw.encode())
    ref = list(csv_mod.reader(io.StringIO(raw)))
    assert t.row_count == 50
    for i, row in enumerate(ref[1:]):
        assert t.column("num").values[i] == float(row[0])
        assert t.column("cat").values[i] == row[1]
        assert t.column("txt").values[i] == row[2]
    assert t.column("num").kind == "numeric"
    assert t.column("cat").kind == "categorical"
    assert t.column("txt").kind == "text"


def test_missing_tokens():
    t = parse_csv(b"a,b\n1,x\nNA,y\nnan,z\n2,w")
    assert t.column("a").kind == "numeric"
    assert t.column("a").values == (1.0, None, None, 2.0)


def test_quoted_fields():
    t = parse_csv(b'a,b\n"x,y","he said ""hi"""\n')
    assert t.column("a").values == ("x,y",)
    assert t.column("b").values == ('he said "hi"',)


def test_crlf():
    t = parse_csv(b"a,b\r\n1,2\r\n")
    assert t.row_count == 1


def test_empty_input():
    with pytest.raises(EmptyInput):
        parse_csv(b"")


def test_ragged_row_line_number():
    with pytest.raises(RaggedRow) as exc:
        parse_csv(b"a,b\n1,2\n3\n")
    assert exc.value.line == 3


def test_encoding_error():
    with pytest.raises(EncodingError):
        parse_csv(b"a\n\xff\xfe")


def test_infinity_is_not_numeric():
    t = parse_csv(b"a\n1\ninf\n2")
    assert t.column("a").kind == "categorical"


def test_roundtrip_debug_dump():
    t = parse_csv(b"a,b\n1,2\nNA,4\n5,6")
    dumped = json.loads(debug_dump(t))
    assert dumped == {"a": [1.0, None, 5.0], "b": [2.0, 4.0, 6.0]}


def _aux(name, values, origin="user", kind="numeric"):
    return AuxColumn(
        name=name, origin=origin,
        column=Column(name=name, kind=kind, values=tuple(values)),
    )


def test_attach_aux_immutability():
    t = parse_csv(b"a\n1\n2\n3\n4")
    t2 = attach_aux(t, _aux("extra", [1.0, 2.0, 3.0, 4.0]))
    assert len(t2.column_names) == 2
    assert len(t.column_names) == 1  # original unchanged
    assert t2.row_ids == t.row_ids


def test_attach_aux_length_mismatch():
    t = parse_csv(b"a\n1\n2\n3\n4")
    with pytest.raises(LengthMismatch):
        attach_aux(t, _aux("extra", [1.0, 2.0, 3.0]))


def test_attach_aux_replaces_same_name():
    t = parse_csv(b"a\n1\n2")
    t = attach_aux(t, _aux("x", [1.0, 1.0]))
    t = attach_aux(t, _aux("x", [9.0, 9.0]))
    assert len(t.aux) == 1
    assert t.column("x").values == (9.0, 9.0)


def test_attach_aux_replacement_property():
    # random replacement sequences: last write wins, exactly one column
    random.seed(3)
    t = parse_csv(b"a\n1\n2")
    last = {}
    for step in range(40):
        name = random.choice(["u", "v", "w"])
        vals = (float(step), float(step))
        t = attach_aux(t, _aux(name, vals))
        last[name] = vals
    assert len(t.aux) == len(last)
    for name, vals in last.items():
        assert t.column(name).values == vals


def test_attach_aux_name_collision_suffix():
    t = parse_csv(b"a\n1\n2")
    t2 = attach_aux(t, _aux("a", [5.0, 6.0]))
    assert t2.column("a").values == (1.0, 2.0)  # dataset column untouched
    assert t2.aux[0].name == "a_2"
    # deterministic: re-attaching resolves to the same name and replaces
    t3 = attach_aux(t2, _aux("a", [7.0, 8.0]))
    assert len(t3.aux) == 1
    assert t3.column("a_2").values == (7.0, 8.0)


def test_numeric_matrix_basic():
    t = parse_csv(b"a,b\n1,2\n3,4\n5,6")
    m, kept = numeric_matrix(t, ["b", "a"])
    assert m.shape == (3, 2)
    assert list(m[0]) == [2.0, 1.0]  # column order follows request
    assert kept == (0, 1, 2)


def test_numeric_matrix_drops_missing():
    t = parse_csv(b"a,b\n1,2\nNA,4\n5,6")
    m, kept = numeric_matrix(t, ["a", "b"])
    assert m.shape == (2, 2)
    assert kept == (0, 2)


def test_numeric_matrix_errors():
    t = parse_csv(b"a,b\n1,x\n2,y")
    with pytest.raises(UnknownColumn):
        numeric_matrix(t, ["zzz"])
    with pytest.raises(NonNumericColumn):
        numeric_matrix(t, ["b"])
    t2 = parse_csv(b"a\nNA\nNA")
    with pytest.raises(NoCompleteRows):
        numeric_matrix(t2, ["a"])


def test_numeric_matrix_random_missingness_oracle():
    random.seed(11)
    n = 60
    cells = {
        "x": [random.random() if random.random() > 0.3 else None
              for _ in range(n)],
        "y": [random.random() if random.random() > 0.3 else None
              for _ in range(n)],
    }
    cols = tuple(
        Column(name=k, kind="numeric", values=tuple(v))
        for k, v in cells.items()
    )
    t = Table(columns=cols, row_count=n, row_ids=tuple(range(n)))
    m, kept = numeric_matrix(t, ["x", "y"])
    # brute-force oracle: scan all cells
    expected = [
        i for i in range(n)
        if cells["x"][i] is not None and cells["y"][i] is not None
    ]
    assert list(kept) == expected
    for row, i in zip(m, expected):
        assert row[0] == cells["x"][i] and row[1] == cells["y"][i]


def test_column_length_invariant():
    with pytest.raises(Exception):
        Table(
            columns=(Column(name="a", kind="numeric", values=(1.0,)),),
            row_count=2,
            row_ids=(0, 1),
        )
