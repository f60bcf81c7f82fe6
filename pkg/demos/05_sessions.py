"""Save a complete working state to one file and restore it byte-exactly.

Run with: python3 demos/05_sessions.py
"""

from pathlib import Path

from linkplot.plots import InteractionState, PlotConfig
from linkplot.session import (
    SESSION_EXTENSION,
    InvariantViolation,
    SessionState,
    load_session,
    save_session,
)
from linkplot.table import parse_csv

table = parse_csv(b"x,y\n1,4\n2,5\n3,6\n")
state = SessionState(
    table=table,
    plots=(
        ("p1", PlotConfig("scatter", {"x_column": "x", "y_column": "y"})),
        ("p2", PlotConfig("table", {"page_size": 10})),
    ),
    interaction=InteractionState(selection=frozenset({0, 2})),
)

path = Path("demo" + SESSION_EXTENSION)
blob = save_session(state)
path.write_bytes(blob)
print(f"wrote {path} ({len(blob)} bytes)")

restored = load_session(path.read_bytes())
print("plots restored:", [pid for pid, _ in restored.plots])
print("selection restored:", sorted(restored.interaction.selection))

# saving is byte-deterministic, so re-saving reproduces the file exactly
assert save_session(restored) == blob
print("round-trip is byte-identical")

# loading rejects inconsistent documents instead of repairing them
broken = blob.replace(b'"x_column":"x"', b'"x_column":"ghost"')
try:
    load_session(broken)
except InvariantViolation as e:
    print(f"rejected broken file: {e}")
