import random

from linkplot.plots import InteractionState, PlotConfig
from linkplot.session import SessionState
from linkplot.table import AuxColumn, Column, Table


def random_session_state(rng: random.Random) -> SessionState:
    """Arbitrary-but-valid SessionState for round-trip properties."""
    n = rng.randint(0, 12)
    row_ids = tuple(range(n))

    def numeric_column(name):
        return Column(
            name=name, kind="numeric",
            values=tuple(
                None if rng.random() < 0.15
                else round(rng.uniform(-1e6, 1e6), rng.randint(0, 12))
                for _ in range(n)
            ),
        )

    def categorical_column(name):
        cats = [f"lab{i}" for i in range(rng.randint(1, 4))]
        values = tuple(
            None if rng.random() < 0.1 else rng.choice(cats)
            for _ in range(n)
        )
        used = []
        for v in values:
            if v is not None and v not in used:
                used.append(v)
        return Column(name=name, kind="categorical", values=values,
                      categories=tuple(used))

    columns = [numeric_column("x"), numeric_column("y")]
    if rng.random() < 0.7:
        columns.append(categorical_column("group"))
    if rng.random() < 0.5:
        columns.append(Column(
            name="note", kind="text",
            values=tuple(
                None if rng.random() < 0.2 else f"t{rng.randint(0, 999)}"
                for _ in range(n)
            ),
        ))

    aux = []
    if rng.random() < 0.5:
        aux.append(AuxColumn(
            name="clusters", origin="cluster",
            column=categorical_column("clusters"),
        ))
    if rng.random() < 0.3:
        aux.append(AuxColumn(
            name="pca1", origin="embedding-x",
            column=numeric_column("pca1"),
        ))

    table = Table(columns=tuple(columns), row_count=n, row_ids=row_ids,
                  aux=tuple(aux))

    plots = []
    pid = 1
    if rng.random() < 0.8:
        plots.append((f"p{pid}", PlotConfig(
            "scatter", {"x_column": "x", "y_column": "y"})))
        pid += 1
    if rng.random() < 0.5:
        plots.append((f"p{pid}", PlotConfig(
            "histogram", {"column": "y", "bin_count": rng.randint(1, 30)})))
        pid += 1
    if rng.random() < 0.3:
        plots.append((f"p{pid}", PlotConfig("table", {"page_size": 5})))
        pid += 1

    selection = frozenset(
        rid for rid in row_ids if rng.random() < 0.2
    )
    hovered = rng.choice(row_ids) if n and rng.random() < 0.4 else None
    cluster = "clusters" if any(a.name == "clusters" for a in aux) else None

    return SessionState(
        table=table,
        plots=tuple(plots),
        interaction=InteractionState(
            cluster_column=cluster, selection=selection, hovered=hovered,
        ),
    )


def states_equivalent(a: SessionState, b: SessionState) -> bool:
    """Structural equality written independently of the serializer."""
    ta, tb = a.table, b.table
    if ta.row_count != tb.row_count or ta.row_ids != tb.row_ids:
        return False
    if ta.column_names != tb.column_names:
        return False
    for name in ta.column_names:
        ca, cb = ta.column(name), tb.column(name)
        if ca.kind != cb.kind or ca.categories != cb.categories:
            return False
        if len(ca.values) != len(cb.values):
            return False
        for va, vb in zip(ca.values, cb.values):
            if va != vb:
                return False
    if [a_.origin for a_ in ta.aux] != [b_.origin for b_ in tb.aux]:
        return False
    if len(a.plots) != len(b.plots):
        return False
    for (pid_a, cfg_a), (pid_b, cfg_b) in zip(a.plots, b.plots):
        if pid_a != pid_b or cfg_a.kind != cfg_b.kind:
            return False
        if cfg_a.options != cfg_b.options:
            return False
    ia, ib = a.interaction, b.interaction
    return (
        ia.cluster_column == ib.cluster_column
        and set(ia.selection) == set(ib.selection)
        and ia.hovered == ib.hovered
        and a.schema_version == b.schema_version
    )
