"""Load a CSV, inspect the inferred schema, and build plot specs.

Run with: python3 demos/01_tables_and_plots.py
"""

import json

from linkplot.plots import InteractionState, PlotConfig, build_plot_spec
from linkplot.table import parse_csv

CSV = b"""name,mw,logp,family
aspirin,180.16,1.19,acid
caffeine,194.19,-0.07,base
ibuprofen,206.28,3.97,acid
paracetamol,151.16,0.46,neutral
naproxen,230.26,3.18,acid
nicotine,162.23,1.17,base
"""

table = parse_csv(CSV)
print(f"{table.row_count} rows, columns:")
for col in table.columns:
    print(f"  {col.name}: {col.kind}")

# every plot is a pure function of (table, config, interaction state)
state = InteractionState()
scatter = build_plot_spec(
    table, PlotConfig("scatter", {"x_column": "mw", "y_column": "logp"}),
    state, "p1",
)
print("\nscatter series keys:", sorted(scatter.series))
print("points:", list(zip(scatter.series["x"], scatter.series["y"])))

hist = build_plot_spec(
    table, PlotConfig("histogram", {"column": "mw", "bin_count": 3}),
    state, "p2",
)
print("\nhistogram edges:", [round(e, 1) for e in hist.series["edges"]])
print("histogram counts:", hist.series["counts"])

bars = build_plot_spec(
    table,
    PlotConfig("barplot", {"value_column": "logp", "group_by": "family"}),
    state, "p3",
)
print("\nmean logp by family:")
for g, v in zip(bars.series["groups"], bars.series["values"]):
    print(f"  {g}: {v:.2f}")

# the spec is plain JSON, ready for any renderer
print("\nfull scatter spec:")
print(json.dumps(scatter.to_dict(), indent=2)[:400], "...")
