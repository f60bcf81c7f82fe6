"""The single-writer state machine tying table, analytics and plots
together.

``dispatch`` is a pure transition: (state, event) -> (state', updates).
Failures never mutate state; they surface as a single StateError update.
Update ordering is deterministic — plots are re-specified in creation
order.
"""

from __future__ import annotations

import io
import re
from dataclasses import replace

import numpy as np

from linkplot import analytics, table as table_mod
from linkplot.engine import events as ev
from linkplot.engine.capabilities import CapabilityFlags, detect_capabilities
from linkplot.engine.registry import Registry, RegistryError
from linkplot.plots import InteractionState, PlotError
from linkplot.session import (
    SessionError,
    SessionState,
    load_session,
    save_session,
)
from linkplot.table import (
    CLUSTER_DEFAULT_LABEL,
    AuxColumn,
    Column,
    TableError,
    attach_aux,
    cluster_column,
    numeric_matrix,
    parse_csv,
    resolve_aux_name,
)

CLUSTER_AUX_NAME = "clusters"
EMBEDDING_AUX_NAMES = ("pca1", "pca2")


def empty_state() -> SessionState:
    return SessionState(
        table=table_mod.empty_table(), plots=(),
        interaction=InteractionState(),
    )


def _error_code(exc: Exception) -> str:
    name = type(exc).__name__
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


def table_summary(state: SessionState) -> dict:
    return {
        "row_count": state.table.row_count,
        "columns": [
            {"name": c.name, "kind": c.kind} for c in state.table.columns
        ],
        "aux": [
            {"name": a.name, "kind": a.column.kind, "origin": a.origin}
            for a in state.table.aux
        ],
    }


def _next_plot_id(state: SessionState) -> str:
    top = 0
    for pid, _ in state.plots:
        m = re.fullmatch(r"p(\d+)", pid)
        if m:
            top = max(top, int(m.group(1)))
    return f"p{top + 1}"


def _respec(state: SessionState, registry: Registry, plot_ids) -> list:
    wanted = set(plot_ids)
    updates = []
    for pid, config in state.plots:  # creation order
        if pid not in wanted:
            continue
        spec = registry.build_spec(
            state.table, config, state.interaction, pid
        )
        updates.append(ev.PlotSpecChanged(plot_id=pid, spec=spec))
    return updates


def _plots_consuming(state: SessionState, registry: Registry, channel: str):
    return [
        pid for pid, config in state.plots
        if channel in registry.hints_for(config.kind).get("consumes", [])
    ]


def _plots_referencing(state: SessionState, names: set):
    out = []
    for pid, config in state.plots:
        if any(
            isinstance(v, str) and v in names
            for v in config.options.values()
        ):
            out.append(pid)
    return out


def _standardize(matrix: np.ndarray) -> np.ndarray:
    mean = matrix.mean(axis=0)
    std = matrix.std(axis=0)
    std[std == 0.0] = 1.0
    return (matrix - mean) / std


def _active_cluster_labels(state: SessionState) -> dict:
    """Current row_id -> label map for the active cluster column."""
    name = state.interaction.cluster_column
    if name is None or not state.table.has_column(name):
        return {}
    col = state.table.column(name)
    return {
        rid: v
        for rid, v in zip(state.table.row_ids, col.values)
        if v is not None and v != CLUSTER_DEFAULT_LABEL
    }


def _attach_clusters(state: SessionState, labels_by_row_id: dict):
    aux = cluster_column(state.table, labels_by_row_id, CLUSTER_AUX_NAME)
    resolved = resolve_aux_name(state.table, CLUSTER_AUX_NAME)
    new_table = attach_aux(state.table, aux)
    return replace(
        state,
        table=new_table,
        interaction=replace(state.interaction, cluster_column=resolved),
    )


def _parse_extended(raw: bytes, format: str):
    import pandas as pd  # capability-gated

    if format == "json":
        frame = pd.read_json(io.BytesIO(raw))
    elif format == "parquet":
        frame = pd.read_parquet(io.BytesIO(raw))
    else:
        raise PlotError(f"unsupported data format {format!r}")
    return parse_csv(frame.to_csv(index=False).encode("utf-8"))


def dispatch(
    state: SessionState,
    event,
    registry: Registry | None = None,
    capabilities: CapabilityFlags | None = None,
):
    """Apply one event; returns (new_state, ordered list of updates)."""
    registry = registry if registry is not None else Registry()
    try:
        return _dispatch(state, event, registry, capabilities)
    except (
        TableError, analytics.AnalyticsError, PlotError, SessionError,
        RegistryError, ev.ProtocolError,
    ) as e:
        return state, [ev.StateError(code=_error_code(e), message=str(e))]
    except Exception as e:  # keep dispatch total
        return state, [ev.StateError(code="internal", message=str(e))]


def _dispatch(state, event, registry, capabilities):
    if isinstance(event, ev.HoverPoint):
        if event.row_id is not None and event.row_id not in state.table.row_ids:
            return state, [ev.StateError(
                code="unknown_row",
                message=f"row {event.row_id!r} not in table",
            )]
        new_state = replace(
            state, interaction=replace(state.interaction, hovered=event.row_id)
        )
        targets = _plots_consuming(new_state, registry, "hover")
        return new_state, _respec(new_state, registry, targets)

    if isinstance(event, ev.SelectionSet):
        known = set(state.table.row_ids)
        bad = set(event.row_ids) - known
        if bad:
            return state, [ev.StateError(
                code="unknown_row",
                message=f"rows not in table: {sorted(bad)!r}",
            )]
        new_state = replace(
            state,
            interaction=replace(
                state.interaction, selection=frozenset(event.row_ids)
            ),
        )
        targets = _plots_consuming(new_state, registry, "selection")
        return new_state, _respec(new_state, registry, targets)

    if isinstance(event, ev.LassoDrawn):
        configs = dict(state.plots)
        if event.source_plot_id not in configs:
            return state, [ev.StateError(
                code="unknown_plot",
                message=f"plot {event.source_plot_id!r} does not exist",
            )]
        config = configs[event.source_plot_id]
        opts = config.options
        if "x_column" not in opts or "y_column" not in opts:
            return state, [ev.StateError(
                code="kind_mismatch",
                message="lasso source plot has no x/y columns",
            )]
        points, kept_ids = numeric_matrix(
            state.table, [opts["x_column"], opts["y_column"]]
        )
        selected = analytics.lasso_select(points, kept_ids, event.polygon)
        labels = _active_cluster_labels(state)
        existing = []
        for v in labels.values():
            if v not in existing:
                existing.append(v)
        new_label = f"c{len(existing) + 1}"
        for rid in selected:
            labels[rid] = new_label
        new_state = _attach_clusters(state, labels)
        targets = _plots_consuming(new_state, registry, "cluster")
        return new_state, (
            [ev.TableChanged(summary=table_summary(new_state))]
            + _respec(new_state, registry, targets)
        )

    if isinstance(event, ev.RunKMeans):
        matrix, kept_ids = numeric_matrix(
            state.table, list(event.column_names)
        )
        if event.standardize:
            matrix = _standardize(matrix)
        clustering = analytics.kmeans(matrix, event.k, event.seed)
        labels = {
            rid: f"c{a + 1}"
            for rid, a in zip(kept_ids, clustering.assignments)
        }
        new_state = _attach_clusters(state, labels)
        targets = _plots_consuming(new_state, registry, "cluster")
        return new_state, (
            [ev.TableChanged(summary=table_summary(new_state))]
            + _respec(new_state, registry, targets)
        )

    if isinstance(event, ev.RunPCA):
        matrix, kept_ids = numeric_matrix(
            state.table, list(event.column_names)
        )
        if event.standardize:
            matrix = _standardize(matrix)
        embedding = analytics.pca2(matrix)
        coord_map = {
            rid: (float(c[0]), float(c[1]))
            for rid, c in zip(kept_ids, embedding.coords)
        }
        new_table = state.table
        resolved = set()
        for axis, (name, origin) in enumerate(
            zip(EMBEDDING_AUX_NAMES, ("embedding-x", "embedding-y"))
        ):
            values = tuple(
                coord_map[rid][axis] if rid in coord_map else None
                for rid in new_table.row_ids
            )
            resolved.add(resolve_aux_name(new_table, name))
            new_table = attach_aux(new_table, AuxColumn(
                name=name, origin=origin,
                column=Column(name=name, kind="numeric", values=values),
            ))
        new_state = replace(state, table=new_table)
        targets = _plots_referencing(new_state, resolved)
        return new_state, (
            [ev.TableChanged(summary=table_summary(new_state))]
            + _respec(new_state, registry, targets)
        )

    if isinstance(event, ev.AddPlot):
        registry.validate(state.table, event.config)
        pid = _next_plot_id(state)
        new_state = replace(state, plots=state.plots + ((pid, event.config),))
        return new_state, _respec(new_state, registry, [pid])

    if isinstance(event, ev.RemovePlot):
        configs = dict(state.plots)
        if event.plot_id not in configs:
            return state, [ev.StateError(
                code="unknown_plot",
                message=f"plot {event.plot_id!r} does not exist",
            )]
        new_state = replace(
            state,
            plots=tuple(p for p in state.plots if p[0] != event.plot_id),
        )
        return new_state, [ev.PlotRemoved(plot_id=event.plot_id)]

    if isinstance(event, ev.UpdatePlotConfig):
        configs = dict(state.plots)
        if event.plot_id not in configs:
            return state, [ev.StateError(
                code="unknown_plot",
                message=f"plot {event.plot_id!r} does not exist",
            )]
        registry.validate(state.table, event.config)
        new_state = replace(
            state,
            plots=tuple(
                (pid, event.config if pid == event.plot_id else cfg)
                for pid, cfg in state.plots
            ),
        )
        return new_state, _respec(new_state, registry, [event.plot_id])

    if isinstance(event, ev.LoadData):
        if event.format == "csv":
            new_table = parse_csv(event.raw)
        else:
            caps = capabilities or detect_capabilities()
            if not caps.has("ingest.extended-formats"):
                return state, [ev.StateError(
                    code="capability_unavailable",
                    message="extended ingestion formats are not available",
                )]
            new_table = _parse_extended(event.raw, event.format)
        removed = [ev.PlotRemoved(plot_id=pid) for pid, _ in state.plots]
        new_state = SessionState(
            table=new_table, plots=(), interaction=InteractionState(),
        )
        return new_state, removed + [
            ev.TableChanged(summary=table_summary(new_state))
        ]

    if isinstance(event, ev.SaveSessionRequest):
        return state, [ev.SessionBlob(data=save_session(state))]

    if isinstance(event, ev.LoadSessionRequest):
        new_state = load_session(event.raw)
        for pid, config in new_state.plots:
            registry.validate(new_state.table, config)
        updates = [ev.TableChanged(summary=table_summary(new_state))]
        updates += _respec(
            new_state, registry, [pid for pid, _ in new_state.plots]
        )
        return new_state, updates

    return state, [ev.StateError(
        code="bad_request", message=f"unhandled event {event!r}"
    )]
