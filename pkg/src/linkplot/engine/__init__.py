"""Engine: event dispatch, plugin registry, protocol, server, CLI."""

from linkplot.engine.capabilities import CapabilityFlags, detect_capabilities
from linkplot.engine.core import dispatch, empty_state, table_summary
from linkplot.engine.protocol import Engine, handle_message, handle_message_bytes
from linkplot.engine.registry import (
    DuplicateKind,
    MalformedManifest,
    PlotKindSpec,
    PluginManifest,
    Registry,
    RegistryError,
    discover_plugins,
    register_plugin,
)

__all__ = [
    "CapabilityFlags",
    "detect_capabilities",
    "dispatch",
    "empty_state",
    "table_summary",
    "Engine",
    "handle_message",
    "handle_message_bytes",
    "DuplicateKind",
    "MalformedManifest",
    "PlotKindSpec",
    "PluginManifest",
    "Registry",
    "RegistryError",
    "discover_plugins",
    "register_plugin",
]
