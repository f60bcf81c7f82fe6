"""Immutable columnar table shared by every plot and analysis.

The table is the single source of truth for a session: the dataset columns
parsed from CSV plus any auxiliary columns produced interactively (cluster
labels, embedding coordinates, selections). Tables are plain immutable
values; "mutation" always returns a new Table.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

NUMERIC = "numeric"
CATEGORICAL = "categorical"
TEXT = "text"

MISSING_TOKENS = {"", "na", "nan"}

AUX_ORIGINS = ("cluster", "embedding-x", "embedding-y", "selection", "user")

#: Cluster label reserved for rows not assigned to any cluster.
CLUSTER_DEFAULT_LABEL = "all"


class TableError(Exception):
    """Base class for all table-store errors."""


class EmptyInput(TableError):
    pass


class RaggedRow(TableError):
    def __init__(self, line: int, expected: int, got: int):
        self.line = line
        super().__init__(
            f"line {line}: expected {expected} fields, got {got}"
        )


class EncodingError(TableError):
    pass


class LengthMismatch(TableError):
    pass


class UnknownColumn(TableError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown column: {name!r}")


class NonNumericColumn(TableError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"column {name!r} is not numeric")


class NoCompleteRows(TableError):
    pass


@dataclass(frozen=True)
class Column:
    """One named column; ``values`` uses None for missing cells."""

    name: str
    kind: str
    values: tuple
    categories: tuple = ()

    def __post_init__(self):
        if not self.name:
            raise TableError("column name must be non-empty")
        if self.kind not in (NUMERIC, CATEGORICAL, TEXT):
            raise TableError(f"bad column kind: {self.kind!r}")
        if self.kind == NUMERIC:
            for v in self.values:
                if v is not None and not math.isfinite(v):
                    raise TableError(
                        f"column {self.name!r}: numeric cells must be finite"
                    )

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class AuxColumn:
    """A derived column attached to the table after load."""

    name: str
    origin: str
    column: Column

    def __post_init__(self):
        if self.origin not in AUX_ORIGINS:
            raise TableError(f"bad aux origin: {self.origin!r}")


@dataclass(frozen=True)
class Table:
    """Immutable dataset: ordered dataset columns plus aux columns.

    row_ids are assigned 0..row_count-1 at load and never reassigned, so
    selections and hover targets stay valid across aux-column updates.
    """

    columns: tuple[Column, ...]
    row_count: int
    row_ids: tuple[int, ...]
    aux: tuple[AuxColumn, ...] = ()

    def __post_init__(self):
        names = [c.name for c in self.columns] + [a.name for a in self.aux]
        if len(set(names)) != len(names):
            raise TableError("duplicate column names")
        for c in self.columns:
            if len(c) != self.row_count:
                raise TableError(
                    f"column {c.name!r} has length {len(c)}, "
                    f"expected {self.row_count}"
                )
        for a in self.aux:
            if len(a.column) != self.row_count:
                raise TableError(
                    f"aux column {a.name!r} has length {len(a.column)}, "
                    f"expected {self.row_count}"
                )
        if len(set(self.row_ids)) != len(self.row_ids):
            raise TableError("row_ids must be unique")

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns) + tuple(
            a.name for a in self.aux
        )

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        for a in self.aux:
            if a.name == name:
                return a.column
        raise UnknownColumn(name)

    def has_column(self, name: str) -> bool:
        return name in self.column_names

    def aux_of_origin(self, origin: str) -> tuple[AuxColumn, ...]:
        return tuple(a for a in self.aux if a.origin == origin)

    def row_index(self, row_id) -> int:
        try:
            return self.row_ids.index(row_id)
        except ValueError:
            raise UnknownColumn(f"row id {row_id!r}")  # pragma: no cover

    def cell(self, name: str, row_id):
        return self.column(name).values[self.row_index(row_id)]


def empty_table() -> Table:
    return Table(columns=(), row_count=0, row_ids=())


def _parse_numeric(cell: str):
    try:
        v = float(cell)
    except ValueError:
        return None
    # inf/nan spellings are not decimal numbers for inference purposes
    return v if math.isfinite(v) else None


def _dedupe_headers(headers: list[str]) -> list[str]:
    out: list[str] = []
    for i, h in enumerate(headers):
        name = h if h else f"unnamed_{i + 1}"
        if name in out:
            j = 2
            while f"{name}_{j}" in out:
                j += 1
            name = f"{name}_{j}"
        out.append(name)
    return out


def _infer_column(name: str, cells: list[str]) -> Column:
    present: list[str] = []
    mask: list[bool] = []
    for cell in cells:
        missing = cell.lower() in MISSING_TOKENS
        mask.append(missing)
        if not missing:
            present.append(cell)

    numeric = [_parse_numeric(c) for c in present]
    if all(v is not None for v in numeric):
        it = iter(numeric)
        values = tuple(None if m else next(it) for m in mask)
        return Column(name=name, kind=NUMERIC, values=values)

    distinct: list[str] = []
    seen = set()
    for c in present:
        if c not in seen:
            seen.add(c)
            distinct.append(c)
    it2 = iter(present)
    values = tuple(None if m else next(it2) for m in mask)
    if len(distinct) <= max(20, 0.05 * len(cells)):
        return Column(
            name=name, kind=CATEGORICAL, values=values,
            categories=tuple(distinct),
        )
    return Column(name=name, kind=TEXT, values=values)


def parse_csv(raw: bytes) -> Table:
    """Parse RFC 4180-style CSV bytes into a Table.

    Comma separator, double-quote escaping, \\n or \\r\\n line ends; the
    first record is the header. Column kinds are inferred: numeric if every
    present cell parses as a finite decimal number, categorical if the
    distinct-value count is at most max(20, 5% of rows), text otherwise.
    Empty cells and "NA"/"NaN" (case-insensitive) are missing.
    """
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise EncodingError(f"input is not valid UTF-8: {e}") from e

    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        records = []
        header = None
        for record in reader:
            if header is None:
                header = record
                continue
            if not record:  # blank line (e.g. trailing newline)
                continue
            if len(record) != len(header):
                raise RaggedRow(reader.line_num, len(header), len(record))
            records.append(record)
    except csv.Error as e:
        raise RaggedRow(reader.line_num, 0, 0) from e

    if header is None or header == []:
        raise EmptyInput("no header row")

    names = _dedupe_headers(header)
    columns = tuple(
        _infer_column(name, [rec[i] for rec in records])
        for i, name in enumerate(names)
    )
    n = len(records)
    return Table(columns=columns, row_count=n, row_ids=tuple(range(n)))


def resolve_aux_name(table: Table, name: str) -> str:
    """Deterministic suffix disambiguation against dataset column names."""
    dataset = {c.name for c in table.columns}
    if name not in dataset:
        return name
    i = 2
    while f"{name}_{i}" in dataset:
        i += 1
    return f"{name}_{i}"


def attach_aux(table: Table, aux: AuxColumn) -> Table:
    """Return a new Table with ``aux`` attached; the input is unchanged.

    Re-attaching under a name that resolves to an existing aux column
    replaces that column in place (same position in column order).
    """
    if len(aux.column) != table.row_count:
        raise LengthMismatch(
            f"aux column {aux.name!r} has length {len(aux.column)}, "
            f"table has {table.row_count} rows"
        )
    name = resolve_aux_name(table, aux.name)
    if name != aux.name:
        aux = AuxColumn(
            name=name, origin=aux.origin,
            column=Column(
                name=name, kind=aux.column.kind, values=aux.column.values,
                categories=aux.column.categories,
            ),
        )
    existing = [a.name for a in table.aux]
    if name in existing:
        new_aux = tuple(
            aux if a.name == name else a for a in table.aux
        )
    else:
        new_aux = table.aux + (aux,)
    return Table(
        columns=table.columns, row_count=table.row_count,
        row_ids=table.row_ids, aux=new_aux,
    )


def cluster_column(
    table: Table, labels_by_row_id: dict, name: str = "clusters"
) -> AuxColumn:
    """Build a categorical cluster aux column; unassigned rows get "all"."""
    values = tuple(
        labels_by_row_id.get(rid, CLUSTER_DEFAULT_LABEL)
        for rid in table.row_ids
    )
    categories: list[str] = []
    for v in values:
        if v != CLUSTER_DEFAULT_LABEL and v not in categories:
            categories.append(v)
    return AuxColumn(
        name=name, origin="cluster",
        column=Column(
            name=name, kind=CATEGORICAL, values=values,
            categories=tuple(categories),
        ),
    )


def numeric_matrix(table: Table, column_names: list[str]):
    """Dense matrix over the named numeric columns, dropping rows with
    missing cells in any of them.

    Returns ``(matrix, kept_row_ids)`` where the matrix is float64
    row-major with columns in ``column_names`` order.
    """
    cols = []
    for name in column_names:
        col = table.column(name)
        if col.kind != NUMERIC:
            raise NonNumericColumn(name)
        cols.append(col)

    kept = [
        i for i in range(table.row_count)
        if all(c.values[i] is not None for c in cols)
    ]
    if not kept:
        raise NoCompleteRows(
            f"no rows without missing values in columns {column_names!r}"
        )
    matrix = np.array(
        [[c.values[i] for c in cols] for i in kept], dtype=np.float64
    )
    kept_ids = tuple(table.row_ids[i] for i in kept)
    return matrix, kept_ids


def debug_dump(table: Table) -> str:
    """Column-major JSON dump of all cells; test/debug helper only."""
    return json.dumps(
        {name: list(table.column(name).values) for name in table.column_names}
    )
