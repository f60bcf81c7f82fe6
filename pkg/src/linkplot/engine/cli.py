"""Console entry point: serve, validate-session, render."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from linkplot.engine import events as ev
from linkplot.engine.capabilities import detect_capabilities
from linkplot.engine.core import dispatch, empty_state
from linkplot.engine.protocol import Engine
from linkplot.engine.registry import Registry, discover_plugins
from linkplot.engine.server import DEFAULT_HOST, DEFAULT_PORT
from linkplot.engine.server import serve as run_server
from linkplot.session import SessionError, load_session


def _build_registry(plugin_dirs):
    capabilities = detect_capabilities()
    registry = Registry()
    if plugin_dirs:
        registry = discover_plugins(registry, plugin_dirs, capabilities)
    return registry, capabilities


@click.group()
def main():
    """Linked-view data exploration engine."""


@main.command("serve")
@click.option("--host", default=DEFAULT_HOST, show_default=True)
@click.option("--port", default=DEFAULT_PORT, show_default=True)
@click.option("--data", type=click.Path(exists=True), default=None,
              help="CSV file to load on startup.")
@click.option("--session", type=click.Path(exists=True), default=None,
              help="Session file to restore on startup.")
@click.option("--plugins", type=click.Path(exists=True), default=None,
              help="Directory with plugin registration files.")
@click.option("--static", type=click.Path(exists=True), default=None,
              help="Directory with the UI bundle to serve at /.")
def serve_cmd(host, port, data, session, plugins, static):
    """Host a local server speaking the engine protocol."""
    registry, capabilities = _build_registry([plugins] if plugins else [])
    state = empty_state()
    if session:
        state = load_session(Path(session).read_bytes())
    elif data:
        state, updates = dispatch(
            state, ev.LoadData(raw=Path(data).read_bytes(), format="csv"),
            registry, capabilities,
        )
        for u in updates:
            if isinstance(u, ev.StateError):
                raise click.ClickException(f"{u.code}: {u.message}")
    engine = Engine(state=state, registry=registry,
                    capabilities=capabilities)
    run_server(engine, host=host, port=port, static_dir=static)


@main.command("validate-session")
@click.argument("file", type=click.Path(exists=True))
def validate_session_cmd(file):
    """Check a session file; exit non-zero if it does not load."""
    try:
        state = load_session(Path(file).read_bytes())
    except SessionError as e:
        click.echo(f"INVALID: {e}")
        sys.exit(1)
    click.echo(
        f"OK: {state.table.row_count} rows, "
        f"{len(state.table.columns)} columns, {len(state.plots)} plots"
    )


@main.command("render")
@click.argument("session", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), required=True)
@click.option("--plugins", type=click.Path(exists=True), default=None)
def render_cmd(session, out, plugins):
    """Headless dump: one PlotSpec JSON per plot, plus any molecule SVGs."""
    registry, _ = _build_registry([plugins] if plugins else [])
    state = load_session(Path(session).read_bytes())
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for pid, config in state.plots:
        spec = registry.build_spec(state.table, config, state.interaction, pid)
        (out_dir / f"{pid}.json").write_text(
            json.dumps(spec.to_dict(), indent=2, sort_keys=True),
            encoding="utf-8",
        )
        svg = spec.series.get("svg") if isinstance(spec.series, dict) else None
        if svg:
            (out_dir / f"{pid}.svg").write_text(svg, encoding="utf-8")
        click.echo(f"wrote {pid} ({config.kind})")


if __name__ == "__main__":
    main()
