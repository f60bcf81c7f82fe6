// Wire types for the engine protocol. The UI derives everything from
// these documents; it never computes over raw data itself.

export const SUPPORTED_SPEC_VERSION = 1;

export interface PlotSpec {
    schema_version: number;
    plot_id: string;
    kind: string;
    series: Record<string, any>;
    encodings: Record<string, any>;
    interaction_hints: { emits: string[]; consumes: string[] };
    warnings: string[];
}

export interface PlotConfig {
    kind: string;
    options: Record<string, any>;
}

export type EngineEvent = Record<string, any> & { type: string };

export type Update =
    | { type: 'plot_spec_changed'; plot_id: string; spec: PlotSpec }
    | { type: 'plot_removed'; plot_id: string }
    | { type: 'table_changed'; summary: TableSummary }
    | { type: 'state_error'; code: string; message: string }
    | { type: 'session_blob'; data: string };

export interface TableSummary {
    row_count: number;
    columns: { name: string; kind: string }[];
    aux: { name: string; kind: string; origin: string }[];
}

export interface StateSummary extends TableSummary {
    plots: { plot_id: string; kind: string; options: Record<string, any> }[];
    cluster_column: string | null;
    selection: number[];
    hovered: number | null;
}

export type Request =
    | { kind: 'event'; event: EngineEvent }
    | { kind: 'get_state_summary' }
    | { kind: 'list_plot_kinds' }
    | { kind: 'get_plot_spec'; plot_id: string };

export type Response =
    | { kind: 'updates'; updates: Update[] }
    | { kind: 'state_summary'; summary: StateSummary }
    | {
        kind: 'plot_kinds';
        kinds: string[];
        config_schemas: Record<string, Record<string, any>>;
        disabled_plugins: { plugin_name: string; reason: string }[];
    }
    | { kind: 'plot_spec'; spec: PlotSpec }
    | { kind: 'error'; code: string; message: string };

export interface Point {
    x: number;
    y: number;
}
