"""Plot-kind registry: built-ins plus manifest-declared plugins.

Plugins ship a manifest object describing the plot kinds they provide.
A registered kind is instantiated through AddPlot exactly like a
built-in, so new plots automatically take part in cross-plot
interaction. Discovery enumerates small JSON registration files bundled
alongside plugin packages.
"""

from __future__ import annotations

import importlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from linkplot.engine.capabilities import CapabilityFlags
from linkplot.plots import (
    BUILTIN_CONFIG_SCHEMAS,
    BUILTIN_KINDS,
    build_plot_spec,
    validate_config,
)

PLUGIN_FILE_SUFFIX = ".linkplot-plugin.json"

#: interaction hints applied to plugin kinds that do not declare any
DEFAULT_PLUGIN_HINTS = {"emits": [], "consumes": ["cluster", "selection"]}


class RegistryError(Exception):
    pass


class DuplicateKind(RegistryError):
    pass


class MalformedManifest(RegistryError):
    pass


@dataclass(frozen=True)
class PlotKindSpec:
    """One plugin-provided plot kind.

    ``builder(table, options, state, plot_id)`` must return a PlotSpec;
    ``config_schema`` is a descriptor the UI uses to build config forms,
    e.g. {"column": {"type": "column", "required": true}}.
    """

    kind_name: str
    config_schema: dict
    builder: object
    interaction_hints: dict | None = None
    validator: object | None = None


@dataclass(frozen=True)
class PluginManifest:
    plugin_name: str
    kinds: tuple = ()
    analytics_hooks: dict = field(default_factory=dict)
    required_capabilities: tuple = ()


@dataclass(frozen=True)
class _DisabledPlugin:
    manifest: PluginManifest
    reason: str


@dataclass(frozen=True)
class Registry:
    plugin_kinds: dict = field(default_factory=dict)  # kind -> PlotKindSpec
    plugins: tuple = ()            # enabled manifests
    disabled: tuple = ()           # _DisabledPlugin entries

    def list_plot_kinds(self) -> list[str]:
        return list(BUILTIN_KINDS) + sorted(self.plugin_kinds)

    def has_kind(self, kind: str) -> bool:
        return kind in BUILTIN_KINDS or kind in self.plugin_kinds

    def validate(self, table, config):
        if config.kind in BUILTIN_KINDS:
            validate_config(table, config)
            return
        spec = self.plugin_kinds.get(config.kind)
        if spec is None:
            raise RegistryError(f"unknown plot kind {config.kind!r}")
        if spec.validator is not None:
            spec.validator(table, config)

    def build_spec(self, table, config, state, plot_id):
        if config.kind in BUILTIN_KINDS:
            return build_plot_spec(table, config, state, plot_id)
        spec = self.plugin_kinds[config.kind]
        return spec.builder(table, config.options, state, plot_id)

    def hints_for(self, kind: str) -> dict:
        from linkplot.plots import HINTS

        if kind in HINTS:
            return HINTS[kind]
        spec = self.plugin_kinds.get(kind)
        if spec is not None and spec.interaction_hints is not None:
            return spec.interaction_hints
        return DEFAULT_PLUGIN_HINTS

    def config_schemas(self) -> dict:
        schemas = dict(BUILTIN_CONFIG_SCHEMAS)
        schemas.update(
            (k, s.config_schema) for k, s in self.plugin_kinds.items()
        )
        return schemas

    def disabled_plugins(self) -> list[dict]:
        return [
            {"plugin_name": d.manifest.plugin_name, "reason": d.reason}
            for d in self.disabled
        ]


def _check_manifest(manifest: PluginManifest):
    if not isinstance(manifest, PluginManifest):
        raise MalformedManifest(f"not a PluginManifest: {manifest!r}")
    if not manifest.plugin_name:
        raise MalformedManifest("plugin_name must be non-empty")
    for ks in manifest.kinds:
        if not isinstance(ks, PlotKindSpec):
            raise MalformedManifest(f"bad kind entry: {ks!r}")
        if not ks.kind_name:
            raise MalformedManifest("kind_name must be non-empty")
        if not callable(ks.builder):
            raise MalformedManifest(
                f"kind {ks.kind_name!r} builder is not callable"
            )


def register_plugin(
    registry: Registry,
    manifest: PluginManifest,
    capabilities: CapabilityFlags | None = None,
) -> Registry:
    """Return a new Registry with the plugin registered.

    Manifests whose required capabilities are unavailable are kept in a
    disabled list with a diagnostic instead of contributing plot kinds.
    """
    _check_manifest(manifest)
    if capabilities is not None:
        missing = capabilities.missing(manifest.required_capabilities)
        if missing:
            reason = f"missing capabilities: {', '.join(missing)}"
            return Registry(
                plugin_kinds=dict(registry.plugin_kinds),
                plugins=registry.plugins,
                disabled=registry.disabled
                + (_DisabledPlugin(manifest, reason),),
            )
    kinds = dict(registry.plugin_kinds)
    for ks in manifest.kinds:
        if ks.kind_name in BUILTIN_KINDS or ks.kind_name in kinds:
            raise DuplicateKind(ks.kind_name)
        kinds[ks.kind_name] = ks
    return Registry(
        plugin_kinds=kinds,
        plugins=registry.plugins + (manifest,),
        disabled=registry.disabled,
    )


def discover_plugins(
    registry: Registry,
    search_dirs,
    capabilities: CapabilityFlags | None = None,
) -> Registry:
    """Enumerate ``*.linkplot-plugin.json`` registration files and register
    the manifests they point at.

    Each file holds {"plugin_name": ..., "module": ..., "attribute": ...}
    naming an importable PluginManifest object.
    """
    files = []
    for d in search_dirs:
        d = Path(d)
        if d.is_dir():
            files.extend(sorted(d.glob(f"*{PLUGIN_FILE_SUFFIX}")))
    for f in files:
        try:
            doc = json.loads(f.read_text("utf-8"))
            module = importlib.import_module(doc["module"])
            manifest = getattr(module, doc.get("attribute", "MANIFEST"))
        except Exception as e:
            raise MalformedManifest(f"{f}: {e}") from e
        registry = register_plugin(registry, manifest, capabilities)
    return registry
