"""Transport-agnostic message protocol.

The same JSON documents are exchanged over local HTTP or an in-process
call boundary; neither side needs to know which. All failures are
in-band error responses with stable codes — handle_message returns a
response for every input, malformed or not.
"""

from __future__ import annotations

import json
import threading

from linkplot.engine import events as ev
from linkplot.engine.capabilities import CapabilityFlags, detect_capabilities
from linkplot.engine.core import dispatch, empty_state, table_summary
from linkplot.engine.registry import Registry

ERROR_BAD_REQUEST = "bad_request"
ERROR_UNKNOWN_PLOT = "unknown_plot"
ERROR_INTERNAL = "internal"


def _error(code: str, message: str) -> dict:
    return {"kind": "error", "code": code, "message": message}


def handle_message(
    state,
    request,
    registry: Registry | None = None,
    capabilities: CapabilityFlags | None = None,
):
    """Handle one protocol document; returns (new_state, response dict)."""
    registry = registry if registry is not None else Registry()
    try:
        if not isinstance(request, dict):
            return state, _error(
                ERROR_BAD_REQUEST, "request must be a JSON object"
            )
        kind = request.get("kind")

        if kind == "event":
            try:
                event = ev.event_from_dict(request.get("event"))
            except ev.ProtocolError as e:
                return state, _error(ERROR_BAD_REQUEST, str(e))
            new_state, updates = dispatch(
                state, event, registry, capabilities
            )
            return new_state, {
                "kind": "updates",
                "updates": [ev.update_to_dict(u) for u in updates],
            }

        if kind == "get_state_summary":
            summary = table_summary_with_plots(state)
            return state, {"kind": "state_summary", "summary": summary}

        if kind == "list_plot_kinds":
            return state, {
                "kind": "plot_kinds",
                "kinds": registry.list_plot_kinds(),
                "config_schemas": registry.config_schemas(),
                "disabled_plugins": registry.disabled_plugins(),
            }

        if kind == "get_plot_spec":
            plot_id = request.get("plot_id")
            configs = dict(state.plots)
            if plot_id not in configs:
                return state, _error(
                    ERROR_UNKNOWN_PLOT, f"plot {plot_id!r} does not exist"
                )
            spec = registry.build_spec(
                state.table, configs[plot_id], state.interaction, plot_id
            )
            return state, {"kind": "plot_spec", "spec": spec.to_dict()}

        return state, _error(
            ERROR_BAD_REQUEST, f"unknown request kind {kind!r}"
        )
    except Exception as e:  # totality: never leak a transport failure
        return state, _error(ERROR_INTERNAL, str(e))


def table_summary_with_plots(state) -> dict:
    summary = table_summary(state)
    summary["plots"] = [
        {"plot_id": pid, "kind": cfg.kind, "options": cfg.options}
        for pid, cfg in state.plots
    ]
    summary["cluster_column"] = state.interaction.cluster_column
    summary["selection"] = sorted(state.interaction.selection)
    summary["hovered"] = state.interaction.hovered
    return summary


def handle_message_bytes(state, raw: bytes, registry=None, capabilities=None):
    """Byte-level entry point; any undecodable input is a bad_request."""
    try:
        request = json.loads(raw.decode("utf-8"))
    except Exception as e:
        return state, _error(ERROR_BAD_REQUEST, f"not a JSON document: {e}")
    return handle_message(state, request, registry, capabilities)


class Engine:
    """One interactive session: committed state plus a serialized command
    queue (a lock), honoring the single-writer concurrency model."""

    def __init__(self, state=None, registry: Registry | None = None,
                 capabilities: CapabilityFlags | None = None):
        self.state = state if state is not None else empty_state()
        self.registry = registry if registry is not None else Registry()
        self.capabilities = (
            capabilities if capabilities is not None else detect_capabilities()
        )
        self._lock = threading.Lock()

    def handle(self, request) -> dict:
        with self._lock:
            self.state, response = handle_message(
                self.state, request, self.registry, self.capabilities
            )
            return response

    def dispatch(self, event):
        with self._lock:
            self.state, updates = dispatch(
                self.state, event, self.registry, self.capabilities
            )
            return updates
