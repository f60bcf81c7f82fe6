"""Drive the full engine through its message protocol, headless.

The same JSON messages travel over HTTP when serving
(`linkplot serve --data file.csv`); here they are handled in-process.

Run with: python3 demos/06_engine_and_protocol.py
"""

import json

from linkplot.engine.protocol import Engine

CSV = """smiles,mw,logp
CCO,46.07,-0.31
c1ccccc1,78.11,2.13
CC(=O)O,60.05,-0.17
CC(=O)Oc1ccccc1C(=O)O,180.16,1.19
Cn1cnc2c1c(=O)n(C)c(=O)n2C,194.19,-0.07
CCC,44.10,1.81
"""

engine = Engine()


def send(doc):
    response = engine.handle(doc)
    kinds = [u["type"] for u in response.get("updates", [])]
    print(f"-> {doc.get('kind')}: {kinds or response.get('kind')}")
    return response


send({"kind": "event", "event": {"type": "load_data", "data": CSV}})
send({"kind": "event", "event": {
    "type": "add_plot",
    "config": {"kind": "scatter",
               "options": {"x_column": "mw", "y_column": "logp"}}}})
send({"kind": "event", "event": {
    "type": "add_plot",
    "config": {"kind": "smiles", "options": {"smiles_column": "smiles"}}}})

# clustering re-specs every cluster-consuming plot in one transaction
send({"kind": "event", "event": {
    "type": "run_kmeans", "column_names": ["mw", "logp"], "k": 2,
    "seed": 9}})

# hovering a scatter point pushes the molecule panel an SVG
response = send({"kind": "event",
                 "event": {"type": "hover_point", "row_id": 3}})
spec = response["updates"][0]["spec"]
print(f"hovered molecule: {spec['series']['smiles']} "
      f"({len(spec['series']['svg'])} bytes of SVG)")

# bad events never corrupt state; errors are structured
response = send({"kind": "event",
                 "event": {"type": "hover_point", "row_id": 999}})
print("error:", response["updates"][0]["code"])

summary = engine.handle({"kind": "get_state_summary"})["summary"]
print("final state:", json.dumps(summary, indent=2)[:300], "...")
