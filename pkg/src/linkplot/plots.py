"""Declarative plot specifications for the built-in plot kinds.

``build_plot_spec`` turns (table, config, interaction state) into a fully
resolved PlotSpec: a renderer needs no access to the table, only to the
spec. Builders are pure functions, so rebuilding a spec from unchanged
inputs is value-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from linkplot import smiles as smiles_mod
from linkplot.table import (
    CATEGORICAL,
    CLUSTER_DEFAULT_LABEL,
    NUMERIC,
    Table,
    UnknownColumn,
)

SPEC_SCHEMA_VERSION = 1

#: Fixed 10-color categorical palette (matplotlib "tab10" hex values).
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

BUILTIN_KINDS = ("scatter", "histogram", "heatmap", "barplot", "table", "smiles")

HISTOGRAM_DEFAULT_BINS = 20
HEATMAP_DEFAULT_BINS = 32
TABLE_DEFAULT_PAGE_SIZE = 25


class PlotError(Exception):
    pass


class KindMismatch(PlotError):
    pass


class UnknownKind(PlotError):
    pass


class NoData(PlotError):
    pass


class LengthMismatch(PlotError):
    pass


class UnknownAggregate(PlotError):
    pass


@dataclass(frozen=True)
class InteractionState:
    """Cross-plot interaction state owned by the engine."""

    cluster_column: str | None = None
    selection: frozenset = frozenset()
    hovered: int | None = None


@dataclass(frozen=True)
class PlotConfig:
    kind: str
    options: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ColorAssignment:
    """Cluster label -> palette index; wraps past 10 with a warning."""

    indices: dict
    wrapped: bool

    @staticmethod
    def for_labels(labels) -> "ColorAssignment":
        distinct = []
        for lab in labels:
            if lab not in distinct and lab != CLUSTER_DEFAULT_LABEL:
                distinct.append(lab)
        return ColorAssignment(
            indices={lab: i % len(PALETTE) for i, lab in enumerate(distinct)},
            wrapped=len(distinct) > len(PALETTE),
        )


@dataclass(frozen=True)
class PlotSpec:
    plot_id: str
    kind: str
    series: dict
    encodings: dict
    interaction_hints: dict
    warnings: tuple = ()

    def to_dict(self) -> dict:
        return {
            "schema_version": SPEC_SCHEMA_VERSION,
            "plot_id": self.plot_id,
            "kind": self.kind,
            "series": self.series,
            "encodings": self.encodings,
            "interaction_hints": self.interaction_hints,
            "warnings": list(self.warnings),
        }


def _require_numeric(table: Table, name: str):
    col = table.column(name)
    if col.kind != NUMERIC:
        raise KindMismatch(f"column {name!r} is not numeric")
    return col


def bin_histogram(values, bin_count: int):
    """Equal-width binning over [min, max]; half-open bins except the last.

    Returns (edges, counts, dropped_count). All-equal inputs produce one
    bin centered on the value.
    """
    if bin_count < 1:
        raise PlotError("bin_count must be >= 1")
    present = [float(v) for v in values if v is not None]
    dropped = len(values) - len(present)
    if not present:
        raise NoData("all values missing")
    lo, hi = min(present), max(present)
    if lo == hi:
        return [lo - 0.5, lo + 0.5], [len(present)], dropped
    edges = np.linspace(lo, hi, bin_count + 1)
    width = (hi - lo) / bin_count
    idx = np.floor((np.asarray(present) - lo) / width).astype(int)
    idx = np.clip(idx, 0, bin_count - 1)
    counts = np.bincount(idx, minlength=bin_count)
    return [float(e) for e in edges], [int(c) for c in counts], dropped


def bin2d(x, y, x_bins: int, y_bins: int):
    """2D density grid; same edge rules as bin_histogram per axis.

    Returns (x_edges, y_edges, grid, dropped_count) with grid[xi][yi].
    """
    if len(x) != len(y):
        raise LengthMismatch(f"{len(x)} x values vs {len(y)} y values")
    if x_bins < 1 or y_bins < 1:
        raise PlotError("bin counts must be >= 1")
    pairs = [
        (float(a), float(b))
        for a, b in zip(x, y)
        if a is not None and b is not None
    ]
    dropped = len(x) - len(pairs)
    if not pairs:
        raise NoData("no rows with both coordinates present")

    def axis_edges(vals, bins):
        lo, hi = min(vals), max(vals)
        if lo == hi:
            return [lo - 0.5, lo + 0.5], 1
        return [float(e) for e in np.linspace(lo, hi, bins + 1)], bins

    xs = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]
    x_edges, nx_ = axis_edges(xs, x_bins)
    y_edges, ny_ = axis_edges(ys, y_bins)

    def bin_of(v, edges, bins):
        lo, hi = edges[0], edges[-1]
        width = (hi - lo) / bins
        i = int(math.floor((v - lo) / width))
        return min(max(i, 0), bins - 1)

    grid = [[0] * ny_ for _ in range(nx_)]
    for a, b in pairs:
        grid[bin_of(a, x_edges, nx_)][bin_of(b, y_edges, ny_)] += 1
    return x_edges, y_edges, grid, dropped


def group_aggregate(values, groups, agg: str):
    """Aggregate values per group, groups ordered by first appearance.

    count/mean/sum all ignore missing values; a group whose values are all
    missing yields None (the renderer draws a gap).
    """
    if len(values) != len(groups):
        raise LengthMismatch(f"{len(values)} values vs {len(groups)} groups")
    if agg not in ("mean", "count", "sum"):
        raise UnknownAggregate(agg)
    order = []
    buckets: dict = {}
    for v, g in zip(values, groups):
        if g not in buckets:
            buckets[g] = []
            order.append(g)
        if v is not None:
            buckets[g].append(float(v))
    results = []
    for g in order:
        vals = buckets[g]
        if agg == "count":
            results.append(len(vals))
        elif not vals:
            results.append(None)
        elif agg == "sum":
            results.append(sum(vals))
        else:
            results.append(sum(vals) / len(vals))
    return order, results


def _sort_key(col, i, row_id):
    v = col.values[i]
    # missing last, ties by row_id
    if v is None:
        return (1, 0, row_id) if col.kind == NUMERIC else (1, "", row_id)
    return (0, v, row_id)


def paginate(table: Table, page: int, page_size: int, sort_column: str | None = None):
    """Stable-sorted row slice for the data-table plot.

    Returns (row_ids, rows) where each row is a list of cell values in
    dataset column order. Out-of-range pages yield an empty slice.
    """
    if page < 0 or page_size < 1:
        raise PlotError("page must be >= 0 and page_size >= 1")
    indices = list(range(table.row_count))
    if sort_column is not None:
        col = table.column(sort_column)
        indices.sort(key=lambda i: _sort_key(col, i, table.row_ids[i]))
    start = page * page_size
    window = indices[start : start + page_size]
    names = table.column_names
    rows = [
        [table.column(name).values[i] for name in names] for i in window
    ]
    return [table.row_ids[i] for i in window], rows


def _cluster_labels(table: Table, state: InteractionState):
    if state.cluster_column is None or not table.has_column(state.cluster_column):
        return None
    col = table.column(state.cluster_column)
    if col.kind != CATEGORICAL:
        return None
    return col


def _color_series(table, state):
    col = _cluster_labels(table, state)
    if col is None:
        return None, ColorAssignment(indices={}, wrapped=False)
    assignment = ColorAssignment.for_labels(col.categories)
    indices = [
        assignment.indices.get(v) if v is not None else None
        for v in col.values
    ]
    return indices, assignment


HINTS = {
    "scatter": {"emits": ["hover", "lasso", "selection"],
                "consumes": ["cluster", "selection"]},
    "histogram": {"emits": [], "consumes": ["cluster"]},
    "heatmap": {"emits": [], "consumes": []},
    "barplot": {"emits": [], "consumes": ["cluster"]},
    "table": {"emits": ["selection"], "consumes": ["selection"]},
    "smiles": {"emits": [], "consumes": ["hover"]},
}


def _build_scatter(plot_id, table, opts, state):
    x_col = _require_numeric(table, opts["x_column"])
    y_col = _require_numeric(table, opts["y_column"])
    color_indices, assignment = _color_series(table, state)
    xs, ys, ids, colors, selected = [], [], [], [], []
    for i, rid in enumerate(table.row_ids):
        xv, yv = x_col.values[i], y_col.values[i]
        if xv is None or yv is None:
            continue
        xs.append(xv)
        ys.append(yv)
        ids.append(rid)
        colors.append(color_indices[i] if color_indices else None)
        selected.append(rid in state.selection)
    warnings = ("palette-wrapped",) if assignment.wrapped else ()
    legend = {str(k): v for k, v in assignment.indices.items()}
    return PlotSpec(
        plot_id=plot_id, kind="scatter",
        series={"x": xs, "y": ys, "row_ids": ids,
                "color_index": colors, "selected": selected},
        encodings={"x_label": opts["x_column"], "y_label": opts["y_column"],
                   "palette": list(PALETTE), "color_legend": legend},
        interaction_hints=HINTS["scatter"], warnings=warnings,
    )


def _build_histogram(plot_id, table, opts, state):
    col = _require_numeric(table, opts["column"])
    bin_count = int(opts.get("bin_count", HISTOGRAM_DEFAULT_BINS))
    cluster_col = _cluster_labels(table, state)
    split = bool(opts.get("split_by_cluster", False)) and cluster_col is not None
    if split:
        assignment = ColorAssignment.for_labels(cluster_col.categories)
        edges, _, _ = bin_histogram(col.values, bin_count)
        groups = {}
        dropped = 0
        for lab in list(cluster_col.categories) + [CLUSTER_DEFAULT_LABEL]:
            vals = [
                v for v, g in zip(col.values, cluster_col.values) if g == lab
            ]
            if not vals:
                continue
            present = [float(v) for v in vals if v is not None]
            dropped += len(vals) - len(present)
            counts = [0] * (len(edges) - 1)
            width = edges[1] - edges[0]
            for v in present:
                i = min(
                    max(int(math.floor((v - edges[0]) / width)), 0),
                    len(counts) - 1,
                )
                counts[i] += 1
            groups[lab] = counts
        series = {"edges": edges, "counts_by_cluster": groups,
                  "dropped_count": dropped}
        legend = {str(k): v for k, v in assignment.indices.items()}
        warnings = ("palette-wrapped",) if assignment.wrapped else ()
    else:
        edges, counts, dropped = bin_histogram(col.values, bin_count)
        series = {"edges": edges, "counts": counts, "dropped_count": dropped}
        legend = {}
        warnings = ()
    return PlotSpec(
        plot_id=plot_id, kind="histogram", series=series,
        encodings={"x_label": opts["column"], "palette": list(PALETTE),
                   "color_legend": legend},
        interaction_hints=HINTS["histogram"], warnings=warnings,
    )


def _build_heatmap(plot_id, table, opts, state):
    x_col = _require_numeric(table, opts["x_column"])
    y_col = _require_numeric(table, opts["y_column"])
    x_bins = int(opts.get("x_bins", HEATMAP_DEFAULT_BINS))
    y_bins = int(opts.get("y_bins", HEATMAP_DEFAULT_BINS))
    x_edges, y_edges, grid, dropped = bin2d(
        x_col.values, y_col.values, x_bins, y_bins
    )
    return PlotSpec(
        plot_id=plot_id, kind="heatmap",
        series={"x_edges": x_edges, "y_edges": y_edges, "grid": grid,
                "dropped_count": dropped},
        encodings={"x_label": opts["x_column"], "y_label": opts["y_column"]},
        interaction_hints=HINTS["heatmap"],
    )


def _build_barplot(plot_id, table, opts, state):
    value_col = _require_numeric(table, opts["value_column"])
    group_col = table.column(opts["group_by"])
    if group_col.kind == NUMERIC:
        raise KindMismatch(
            f"group_by column {opts['group_by']!r} must be categorical"
        )
    agg = opts.get("aggregate", "mean")
    groups, results = group_aggregate(value_col.values, group_col.values, agg)
    assignment = ColorAssignment.for_labels(
        [g for g in groups if g is not None]
    )
    return PlotSpec(
        plot_id=plot_id, kind="barplot",
        series={"groups": [str(g) if g is not None else None for g in groups],
                "values": results},
        encodings={"y_label": f"{agg}({opts['value_column']})",
                   "x_label": opts["group_by"], "palette": list(PALETTE),
                   "color_legend": {str(k): v
                                    for k, v in assignment.indices.items()}},
        interaction_hints=HINTS["barplot"],
        warnings=("palette-wrapped",) if assignment.wrapped else (),
    )


def _build_table(plot_id, table, opts, state):
    page = int(opts.get("page", 0))
    page_size = int(opts.get("page_size", TABLE_DEFAULT_PAGE_SIZE))
    sort_column = opts.get("sort_column")
    if sort_column is not None and not table.has_column(sort_column):
        raise UnknownColumn(sort_column)
    row_ids, rows = paginate(table, page, page_size, sort_column)
    page_count = max(1, -(-table.row_count // page_size))
    return PlotSpec(
        plot_id=plot_id, kind="table",
        series={"columns": list(table.column_names), "rows": rows,
                "row_ids": row_ids, "page": page, "page_count": page_count,
                "selected": [rid in state.selection for rid in row_ids]},
        encodings={},
        interaction_hints=HINTS["table"],
    )


def _build_smiles(plot_id, table, opts, state):
    col = table.column(opts["smiles_column"])
    if col.kind == NUMERIC:
        raise KindMismatch(
            f"smiles_column {opts['smiles_column']!r} must hold text"
        )
    mode = opts.get("mode", "hover-follow")
    if isinstance(mode, dict) and "pinned" in mode:
        target = mode["pinned"]
    elif mode == "hover-follow":
        target = state.hovered
    else:
        raise PlotError(f"bad smiles mode {mode!r}")

    series: dict = {}
    if target is not None and target in table.row_ids:
        raw = table.cell(opts["smiles_column"], target)
        if raw is not None:
            series["row_id"] = target
            series["smiles"] = raw
            try:
                graph = smiles_mod.parse_smiles(str(raw))
                layout = smiles_mod.layout2d(graph)
                series["svg"] = smiles_mod.depict_svg(graph, layout)
            except smiles_mod.SmilesError as e:
                series["error"] = str(e)
    return PlotSpec(
        plot_id=plot_id, kind="smiles", series=series,
        encodings={"smiles_column": opts["smiles_column"]},
        interaction_hints=HINTS["smiles"],
    )


_BUILDERS = {
    "scatter": _build_scatter,
    "histogram": _build_histogram,
    "heatmap": _build_heatmap,
    "barplot": _build_barplot,
    "table": _build_table,
    "smiles": _build_smiles,
}

#: Config field descriptors per built-in kind, for schema-driven forms.
BUILTIN_CONFIG_SCHEMAS = {
    "scatter": {
        "x_column": {"type": "column", "required": True},
        "y_column": {"type": "column", "required": True},
    },
    "histogram": {
        "column": {"type": "column", "required": True},
        "bin_count": {"type": "int", "default": HISTOGRAM_DEFAULT_BINS},
        "split_by_cluster": {"type": "bool", "default": False},
    },
    "heatmap": {
        "x_column": {"type": "column", "required": True},
        "y_column": {"type": "column", "required": True},
        "x_bins": {"type": "int", "default": HEATMAP_DEFAULT_BINS},
        "y_bins": {"type": "int", "default": HEATMAP_DEFAULT_BINS},
    },
    "barplot": {
        "value_column": {"type": "column", "required": True},
        "group_by": {"type": "column", "required": True},
        "aggregate": {"type": "string", "default": "mean"},
    },
    "table": {
        "page": {"type": "int", "default": 0},
        "page_size": {"type": "int", "default": TABLE_DEFAULT_PAGE_SIZE},
        "sort_column": {"type": "column"},
    },
    "smiles": {
        "smiles_column": {"type": "column", "required": True},
    },
}

_REQUIRED_OPTIONS = {
    "scatter": ("x_column", "y_column"),
    "histogram": ("column",),
    "heatmap": ("x_column", "y_column"),
    "barplot": ("value_column", "group_by"),
    "table": (),
    "smiles": ("smiles_column",),
}


def validate_config(table: Table, config: PlotConfig):
    """Check a built-in config against the table schema; raises on error."""
    if config.kind not in _BUILDERS:
        raise UnknownKind(config.kind)
    for key in _REQUIRED_OPTIONS[config.kind]:
        if key not in config.options:
            raise PlotError(f"{config.kind} config needs {key!r}")
        name = config.options[key]
        if not table.has_column(name):
            raise UnknownColumn(name)


def build_plot_spec(table: Table, config: PlotConfig,
                    state: InteractionState, plot_id: str = "p0") -> PlotSpec:
    """Resolve a plot config into a self-contained PlotSpec."""
    validate_config(table, config)
    return _BUILDERS[config.kind](plot_id, table, config.options, state)
