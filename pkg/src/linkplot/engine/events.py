"""Typed interaction messages flowing between plots through the engine.

Events describe user intent; Updates describe what changed. Both are
plain values with a stable JSON mapping so the same messages work over
HTTP or an in-process call boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from linkplot.analytics import Polygon
from linkplot.plots import PlotConfig, PlotSpec


class ProtocolError(Exception):
    pass


# --- events -----------------------------------------------------------------

@dataclass(frozen=True)
class HoverPoint:
    row_id: object = None  # None clears hover


@dataclass(frozen=True)
class SelectionSet:
    row_ids: frozenset = frozenset()


@dataclass(frozen=True)
class LassoDrawn:
    source_plot_id: str
    polygon: Polygon


@dataclass(frozen=True)
class RunKMeans:
    column_names: tuple
    k: int
    seed: int = 0
    standardize: bool = False


@dataclass(frozen=True)
class RunPCA:
    column_names: tuple
    standardize: bool = False


@dataclass(frozen=True)
class AddPlot:
    config: PlotConfig


@dataclass(frozen=True)
class RemovePlot:
    plot_id: str


@dataclass(frozen=True)
class UpdatePlotConfig:
    plot_id: str
    config: PlotConfig


@dataclass(frozen=True)
class LoadData:
    raw: bytes
    format: str = "csv"


@dataclass(frozen=True)
class SaveSessionRequest:
    pass


@dataclass(frozen=True)
class LoadSessionRequest:
    raw: bytes


EVENT_TYPES = (
    HoverPoint, SelectionSet, LassoDrawn, RunKMeans, RunPCA, AddPlot,
    RemovePlot, UpdatePlotConfig, LoadData, SaveSessionRequest,
    LoadSessionRequest,
)


# --- updates ----------------------------------------------------------------

@dataclass(frozen=True)
class PlotSpecChanged:
    plot_id: str
    spec: PlotSpec


@dataclass(frozen=True)
class PlotRemoved:
    plot_id: str


@dataclass(frozen=True)
class StateError:
    code: str
    message: str


@dataclass(frozen=True)
class SessionBlob:
    data: bytes


@dataclass(frozen=True)
class TableChanged:
    summary: dict = field(default_factory=dict)


# --- JSON mapping -----------------------------------------------------------

_EVENT_NAMES = {
    "hover_point": HoverPoint,
    "selection_set": SelectionSet,
    "lasso_drawn": LassoDrawn,
    "run_kmeans": RunKMeans,
    "run_pca": RunPCA,
    "add_plot": AddPlot,
    "remove_plot": RemovePlot,
    "update_plot_config": UpdatePlotConfig,
    "load_data": LoadData,
    "save_session_request": SaveSessionRequest,
    "load_session_request": LoadSessionRequest,
}


def _config_from_doc(doc) -> PlotConfig:
    if not isinstance(doc, dict) or not isinstance(doc.get("kind"), str):
        raise ProtocolError("plot config must be an object with a 'kind'")
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ProtocolError("config options must be an object")
    return PlotConfig(kind=doc["kind"], options=options)


def event_from_dict(doc) -> object:
    """Decode a protocol event document; raises ProtocolError on bad input."""
    if not isinstance(doc, dict):
        raise ProtocolError("event must be a JSON object")
    name = doc.get("type")
    if name not in _EVENT_NAMES:
        raise ProtocolError(f"unknown event type {name!r}")
    try:
        if name == "hover_point":
            return HoverPoint(row_id=doc.get("row_id"))
        if name == "selection_set":
            ids = doc.get("row_ids", [])
            if not isinstance(ids, list):
                raise ProtocolError("row_ids must be a list")
            return SelectionSet(row_ids=frozenset(ids))
        if name == "lasso_drawn":
            verts = doc.get("polygon", [])
            polygon = Polygon(vertices=tuple(
                (float(v[0]), float(v[1])) for v in verts
            ))
            return LassoDrawn(
                source_plot_id=str(doc["source_plot_id"]), polygon=polygon
            )
        if name == "run_kmeans":
            return RunKMeans(
                column_names=tuple(doc["column_names"]),
                k=int(doc["k"]),
                seed=int(doc.get("seed", 0)),
                standardize=bool(doc.get("standardize", False)),
            )
        if name == "run_pca":
            return RunPCA(
                column_names=tuple(doc["column_names"]),
                standardize=bool(doc.get("standardize", False)),
            )
        if name == "add_plot":
            return AddPlot(config=_config_from_doc(doc.get("config")))
        if name == "remove_plot":
            return RemovePlot(plot_id=str(doc["plot_id"]))
        if name == "update_plot_config":
            return UpdatePlotConfig(
                plot_id=str(doc["plot_id"]),
                config=_config_from_doc(doc.get("config")),
            )
        if name == "load_data":
            return LoadData(
                raw=str(doc.get("data", "")).encode("utf-8"),
                format=str(doc.get("format", "csv")),
            )
        if name == "save_session_request":
            return SaveSessionRequest()
        return LoadSessionRequest(
            raw=str(doc.get("data", "")).encode("utf-8")
        )
    except ProtocolError:
        raise
    except Exception as e:
        raise ProtocolError(f"bad event payload: {e}") from e


def update_to_dict(update) -> dict:
    if isinstance(update, PlotSpecChanged):
        return {
            "type": "plot_spec_changed",
            "plot_id": update.plot_id,
            "spec": update.spec.to_dict(),
        }
    if isinstance(update, PlotRemoved):
        return {"type": "plot_removed", "plot_id": update.plot_id}
    if isinstance(update, StateError):
        return {"type": "state_error", "code": update.code,
                "message": update.message}
    if isinstance(update, SessionBlob):
        return {"type": "session_blob",
                "data": update.data.decode("utf-8")}
    if isinstance(update, TableChanged):
        return {"type": "table_changed", "summary": update.summary}
    raise ProtocolError(f"unknown update {update!r}")  # pragma: no cover
