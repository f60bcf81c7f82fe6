import json
import random
from pathlib import Path

import pytest

from conftest import random_session_state, states_equivalent
from linkplot.plots import InteractionState, PlotConfig
from linkplot.session import (
    InvariantViolation,
    MalformedDocument,
    SessionState,
    UnsupportedVersion,
    load_session,
    save_session,
)
from linkplot.table import empty_table, parse_csv

FIXTURES = Path(__file__).parent / "fixtures"


def _simple_state():
    table = parse_csv(b"x,y\n1,2\n3,4\n5,6")
    return SessionState(
        table=table,
        plots=(
            ("p1", PlotConfig("scatter", {"x_column": "x", "y_column": "y"})),
        ),
        interaction=InteractionState(selection=frozenset({0, 2}), hovered=1),
    )


def test_roundtrip_simple():
    s = _simple_state()
    assert states_equivalent(load_session(save_session(s)), s)


def test_save_deterministic_and_idempotent():
    s = _simple_state()
    blob = save_session(s)
    assert save_session(s) == blob
    assert save_session(load_session(blob)) == blob  # save(load(save)) = save


def test_empty_state_roundtrip():
    s = SessionState(table=empty_table(), plots=(),
                     interaction=InteractionState())
    assert states_equivalent(load_session(save_session(s)), s)


def test_randomized_roundtrip():
    rng = random.Random(2024)
    for _ in range(200):
        s = random_session_state(rng)
        loaded = load_session(save_session(s))
        assert states_equivalent(loaded, s)
        assert save_session(loaded) == save_session(s)


def test_unsupported_version():
    doc = json.loads(save_session(_simple_state()).decode())
    doc["schema_version"] = 2
    with pytest.raises(UnsupportedVersion) as e:
        load_session(json.dumps(doc).encode())
    assert e.value.found == 2


def test_plot_referencing_missing_column():
    doc = json.loads(save_session(_simple_state()).decode())
    doc["plots"][0]["options"]["x_column"] = "ghost"
    with pytest.raises(InvariantViolation) as e:
        load_session(json.dumps(doc).encode())
    assert "ghost" in str(e.value) and "p1" in str(e.value)


def test_truncated_stream():
    blob = save_session(_simple_state())
    with pytest.raises(MalformedDocument):
        load_session(blob[: len(blob) // 2])


def test_selection_outside_rows_rejected():
    doc = json.loads(save_session(_simple_state()).decode())
    doc["interaction"]["selection"] = [99]
    with pytest.raises(InvariantViolation):
        load_session(json.dumps(doc).encode())


def test_duplicate_plot_ids_rejected():
    doc = json.loads(save_session(_simple_state()).decode())
    doc["plots"].append(dict(doc["plots"][0]))
    with pytest.raises(InvariantViolation):
        load_session(json.dumps(doc).encode())


def test_load_never_crashes_on_garbage():
    rng = random.Random(55)
    for _ in range(2000):
        raw = bytes(rng.randrange(256) for _ in range(rng.randrange(80)))
        try:
            load_session(raw)
        except (MalformedDocument, UnsupportedVersion, InvariantViolation):
            pass


def test_full_double_precision():
    table = parse_csv(b"v\n0.1\n")
    import dataclasses

    col = table.column("v")
    tricky = dataclasses.replace(
        col, values=(1.0 / 3.0,),
    )
    table = dataclasses.replace(table, columns=(tricky,))
    s = SessionState(table=table, plots=(), interaction=InteractionState())
    loaded = load_session(save_session(s))
    assert loaded.table.column("v").values[0] == 1.0 / 3.0


def test_golden_fixture_loads_unchanged():
    blob = (FIXTURES / "golden.xsession.json").read_bytes()
    state = load_session(blob)
    assert save_session(state) == blob  # byte-stable across releases
    assert state.table.row_count == 3
    assert [pid for pid, _ in state.plots] == ["p1"]
