"""Session persistence: one self-describing JSON document per session.

The file embeds everything — data, aux columns, plot configs, interaction
state — so a single ".xsession.json" artifact can be shared and restored.
Saving is byte-deterministic (sorted keys, fixed number formatting) and
loading validates every invariant before returning; it rejects rather
than repairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from linkplot.plots import (
    BUILTIN_KINDS,
    InteractionState,
    PlotConfig,
    PlotError,
    validate_config,
)
from linkplot.table import (
    AUX_ORIGINS,
    AuxColumn,
    Column,
    Table,
    TableError,
    UnknownColumn,
)

SESSION_SCHEMA_VERSION = 1
SESSION_EXTENSION = ".xsession.json"


class SessionError(Exception):
    pass


class MalformedDocument(SessionError):
    pass


class UnsupportedVersion(SessionError):
    def __init__(self, found):
        self.found = found
        super().__init__(f"unsupported schema_version: {found!r}")


class InvariantViolation(SessionError):
    def __init__(self, description: str, path: str):
        self.description = description
        self.path = path
        super().__init__(f"{path}: {description}")


@dataclass(frozen=True)
class SessionState:
    table: Table
    plots: tuple  # ordered (plot_id, PlotConfig) pairs
    interaction: InteractionState
    schema_version: int = SESSION_SCHEMA_VERSION


def _column_doc(col: Column) -> dict:
    return {
        "name": col.name,
        "kind": col.kind,
        "values": list(col.values),
        "categories": list(col.categories),
    }


def save_session(state: SessionState) -> bytes:
    """Serialize to a deterministic UTF-8 JSON byte sequence."""
    doc = {
        "schema_version": state.schema_version,
        "table": {
            "columns": [_column_doc(c) for c in state.table.columns],
            "aux": [
                {"origin": a.origin, **_column_doc(a.column)}
                for a in state.table.aux
            ],
            "row_ids": list(state.table.row_ids),
        },
        "plots": [
            {"plot_id": pid, "kind": cfg.kind, "options": cfg.options}
            for pid, cfg in state.plots
        ],
        "interaction": {
            "cluster_column": state.interaction.cluster_column,
            "selection": sorted(state.interaction.selection),
            "hovered": state.interaction.hovered,
        },
    }
    return json.dumps(
        doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def _expect(cond: bool, description: str, path: str):
    if not cond:
        raise InvariantViolation(description, path)


def _load_column(doc, path: str) -> Column:
    _expect(isinstance(doc, dict), "column must be an object", path)
    for key in ("name", "kind", "values"):
        _expect(key in doc, f"column missing {key!r}", path)
    values = doc["values"]
    _expect(isinstance(values, list), "values must be a list", path)
    if doc["kind"] == "numeric":
        out = []
        for v in values:
            _expect(
                v is None or isinstance(v, (int, float)),
                "numeric cells must be numbers or null", path,
            )
            out.append(None if v is None else float(v))
        values = out
    try:
        return Column(
            name=doc["name"],
            kind=doc["kind"],
            values=tuple(values),
            categories=tuple(doc.get("categories", [])),
        )
    except TableError as e:
        raise InvariantViolation(str(e), path)


def load_session(raw: bytes) -> SessionState:
    """Parse and validate a session document.

    Raises MalformedDocument for anything that is not a JSON object,
    UnsupportedVersion for unknown schema versions, and
    InvariantViolation (with a path) for structurally valid documents
    that break a state invariant.
    """
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise MalformedDocument(str(e)) from e
    if not isinstance(doc, dict):
        raise MalformedDocument("top level must be a JSON object")

    version = doc.get("schema_version")
    if version != SESSION_SCHEMA_VERSION:
        raise UnsupportedVersion(version)

    table_doc = doc.get("table")
    if not isinstance(table_doc, dict):
        raise MalformedDocument("missing or invalid 'table' object")

    columns = tuple(
        _load_column(c, f"table.columns[{i}]")
        for i, c in enumerate(table_doc.get("columns", []))
    )
    aux = []
    for i, a in enumerate(table_doc.get("aux", [])):
        path = f"table.aux[{i}]"
        _expect(isinstance(a, dict), "aux column must be an object", path)
        origin = a.get("origin")
        _expect(origin in AUX_ORIGINS, f"bad aux origin {origin!r}", path)
        aux.append(AuxColumn(name=a.get("name", ""), origin=origin,
                             column=_load_column(a, path)))

    row_ids = table_doc.get("row_ids", [])
    _expect(isinstance(row_ids, list), "row_ids must be a list", "table.row_ids")
    try:
        table = Table(
            columns=columns,
            row_count=len(row_ids),
            row_ids=tuple(row_ids),
            aux=tuple(aux),
        )
    except TableError as e:
        raise InvariantViolation(str(e), "table")

    plots = []
    seen_ids = set()
    for i, p in enumerate(doc.get("plots", [])):
        path = f"plots[{i}]"
        _expect(isinstance(p, dict), "plot entry must be an object", path)
        pid = p.get("plot_id")
        _expect(isinstance(pid, str) and pid, "plot_id must be a string", path)
        _expect(pid not in seen_ids, f"duplicate plot_id {pid!r}", path)
        seen_ids.add(pid)
        kind = p.get("kind")
        _expect(isinstance(kind, str), "kind must be a string", path)
        options = p.get("options", {})
        _expect(isinstance(options, dict), "options must be an object", path)
        config = PlotConfig(kind=kind, options=options)
        if kind in BUILTIN_KINDS:
            try:
                validate_config(table, config)
            except UnknownColumn as e:
                raise InvariantViolation(
                    f"plot {pid!r} references missing column {e.name!r}", path
                )
            except (PlotError, TableError) as e:
                raise InvariantViolation(f"plot {pid!r}: {e}", path)
        plots.append((pid, config))

    inter = doc.get("interaction", {})
    _expect(isinstance(inter, dict), "interaction must be an object",
            "interaction")
    selection = inter.get("selection", [])
    _expect(isinstance(selection, list), "selection must be a list",
            "interaction.selection")
    known = set(table.row_ids)
    for rid in selection:
        _expect(rid in known, f"selected row {rid!r} not in table",
                "interaction.selection")
    hovered = inter.get("hovered")
    _expect(hovered is None or hovered in known,
            f"hovered row {hovered!r} not in table", "interaction.hovered")
    cluster_column = inter.get("cluster_column")
    _expect(
        cluster_column is None or table.has_column(cluster_column),
        f"cluster column {cluster_column!r} not in table",
        "interaction.cluster_column",
    )

    return SessionState(
        table=table,
        plots=tuple(plots),
        interaction=InteractionState(
            cluster_column=cluster_column,
            selection=frozenset(selection),
            hovered=hovered,
        ),
        schema_version=version,
    )
