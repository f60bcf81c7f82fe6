// Application shell: a grid of plot cards driven entirely by protocol
// responses. The UI holds no data-derived state of its own; reloading
// the page and replaying get_state_summary + get_plot_spec rebuilds
// the identical view.

import { ProtocolClient, httpTransport } from './client.js';
import { ConfigSchema, configFromForm, renderConfigForm } from './forms.js';
import { MAX_LASSO_VERTICES, simplifyLasso, toDataCoords } from './lasso.js';
import {
    PLOT_HEIGHT,
    PLOT_WIDTH,
    escapeHtml,
    renderPlot,
} from './renderers.js';
import { downloadSession, eventForFile } from './session.js';
import { PlotSpec, Point, StateSummary, Update } from './types.js';

interface CardState {
    spec: PlotSpec | null;
    kind: string;
}

export class App {
    private client: ProtocolClient;
    private cards = new Map<string, CardState>();
    private schemas: Record<string, ConfigSchema> = {};
    private kinds: string[] = [];
    private summary: StateSummary | null = null;
    private lassoPath: Point[] = [];
    private lassoPlot: string | null = null;

    constructor(
        private root: HTMLElement,
        client?: ProtocolClient,
    ) {
        this.client = client ?? new ProtocolClient(httpTransport());
        this.client.onUpdates = (updates) => this.applyUpdates(updates);
        this.client.onError = (message) => this.showError(message);
    }

    async start(): Promise<void> {
        this.root.innerHTML = `
            <header>
              <h1>linkplot</h1>
              <input type="file" id="file-input"
                     accept=".csv,.json,.xsession.json"/>
              <select id="kind-select"></select>
              <button id="add-plot">add plot</button>
              <button id="run-kmeans">k-means</button>
              <button id="run-pca">pca</button>
              <button id="save-session">save session</button>
              <span id="pending" class="hidden">working...</span>
            </header>
            <div id="error-banner" class="banner error hidden"></div>
            <main id="grid"></main>`;
        this.wireToolbar();

        const kindsResponse = await this.client.send({
            kind: 'list_plot_kinds',
        });
        if (kindsResponse.kind === 'plot_kinds') {
            this.kinds = kindsResponse.kinds;
            this.schemas = kindsResponse.config_schemas as Record<
                string,
                ConfigSchema
            >;
            const select = this.el('#kind-select') as HTMLSelectElement;
            select.innerHTML = this.kinds
                .map((k) => `<option>${escapeHtml(k)}</option>`)
                .join('');
        }
        await this.refreshFromSummary();
    }

    /** Rebuild every card from the engine's committed state. */
    async refreshFromSummary(): Promise<void> {
        const response = await this.client.send({ kind: 'get_state_summary' });
        if (response.kind !== 'state_summary') return;
        this.summary = response.summary;
        this.cards.clear();
        for (const plot of response.summary.plots) {
            this.cards.set(plot.plot_id, { spec: null, kind: plot.kind });
            const specResponse = await this.client.send({
                kind: 'get_plot_spec',
                plot_id: plot.plot_id,
            });
            if (specResponse.kind === 'plot_spec') {
                this.cards.get(plot.plot_id)!.spec = specResponse.spec;
            }
        }
        this.redraw();
    }

    applyUpdates(updates: Update[]): void {
        let tableChanged = false;
        for (const update of updates) {
            switch (update.type) {
                case 'plot_spec_changed':
                    this.cards.set(update.plot_id, {
                        spec: update.spec,
                        kind: update.spec.kind,
                    });
                    break;
                case 'plot_removed':
                    this.cards.delete(update.plot_id);
                    break;
                case 'state_error':
                    this.showError(`${update.code}: ${update.message}`);
                    break;
                case 'session_blob':
                    downloadSession(update.data);
                    break;
                case 'table_changed':
                    tableChanged = true;
                    break;
            }
        }
        if (tableChanged) {
            // column lists feed the config forms; resync then redraw
            void this.refreshFromSummary();
        } else {
            this.redraw();
        }
    }

    redraw(): void {
        const grid = this.el('#grid');
        const html: string[] = [];
        for (const [plotId, card] of this.cards) {
            const body = card.spec
                ? renderPlot(card.spec)
                : '<div class="plot placeholder">loading</div>';
            const form = renderConfigForm(
                card.kind,
                this.schemas[card.kind] ?? {},
                this.summary,
                this.currentOptions(plotId),
            );
            html.push(`
                <section class="card" data-plot-id="${plotId}">
                  <div class="card-head">
                    <span class="plot-id">${plotId}</span>
                    <span class="kind">${escapeHtml(card.kind)}</span>
                    <button class="remove-plot">x</button>
                  </div>
                  ${body}
                  ${form}
                </section>`);
        }
        grid.innerHTML = html.join('');
        this.wireCards();
    }

    private currentOptions(plotId: string): Record<string, any> {
        const plot = this.summary?.plots.find((p) => p.plot_id === plotId);
        return plot?.options ?? {};
    }

    private wireToolbar(): void {
        this.el('#add-plot').addEventListener('click', () => {
            const kind = (this.el('#kind-select') as HTMLSelectElement).value;
            void this.client.sendEvent({
                type: 'add_plot',
                config: { kind, options: this.defaultOptions(kind) },
            });
        });
        this.el('#run-kmeans').addEventListener('click', () => {
            const columns = this.numericColumns();
            const k = parseInt(prompt('number of clusters', '3') ?? '', 10);
            if (!columns.length || !Number.isFinite(k)) return;
            void this.client.sendEvent({
                type: 'run_kmeans',
                column_names: columns,
                k,
                seed: 0,
                standardize: true,
            });
        });
        this.el('#run-pca').addEventListener('click', () => {
            const columns = this.numericColumns();
            if (columns.length < 2) return;
            void this.client.sendEvent({
                type: 'run_pca',
                column_names: columns,
                standardize: true,
            });
        });
        this.el('#save-session').addEventListener('click', () => {
            void this.client.sendEvent({ type: 'save_session_request' });
        });
        this.el('#file-input').addEventListener('change', async (e) => {
            const input = e.target as HTMLInputElement;
            const file = input.files?.[0];
            if (!file) return;
            const content = await file.text();
            void this.client.sendEvent(eventForFile(file.name, content));
            input.value = '';
        });
    }

    private defaultOptions(kind: string): Record<string, any> {
        // seed required column fields with the first matching columns so
        // "add plot" works in one click; the form refines afterwards
        const schema = this.schemas[kind] ?? {};
        const numeric = this.numericColumns();
        const all = this.summary?.columns.map((c) => c.name) ?? [];
        const options: Record<string, any> = {};
        let cursor = 0;
        for (const [name, desc] of Object.entries(schema)) {
            if (desc.type !== 'column' || !desc.required) continue;
            const pool = name.includes('smiles') || name === 'group_by'
                ? all.filter((c) => !numeric.includes(c))
                : numeric;
            options[name] = pool[cursor % Math.max(pool.length, 1)] ?? all[0];
            cursor += 1;
        }
        return options;
    }

    private numericColumns(): string[] {
        if (!this.summary) return [];
        return this.summary.columns
            .filter((c) => c.kind === 'numeric')
            .map((c) => c.name);
    }

    private wireCards(): void {
        for (const card of this.root.querySelectorAll<HTMLElement>('.card')) {
            const plotId = card.dataset.plotId!;
            card.querySelector('.remove-plot')?.addEventListener(
                'click',
                () =>
                    void this.client.sendEvent({
                        type: 'remove_plot',
                        plot_id: plotId,
                    }),
            );
            card.querySelector('form')?.addEventListener('submit', (e) => {
                e.preventDefault();
                const form = e.target as HTMLFormElement;
                const kind = form.dataset.kind!;
                const values: Record<string, string | boolean> = {};
                for (const field of form.querySelectorAll<
                    HTMLInputElement | HTMLSelectElement
                >('input,select')) {
                    values[field.name] =
                        field instanceof HTMLInputElement &&
                        field.type === 'checkbox'
                            ? field.checked
                            : field.value;
                }
                void this.client.sendEvent({
                    type: 'update_plot_config',
                    plot_id: plotId,
                    config: configFromForm(
                        kind,
                        this.schemas[kind] ?? {},
                        values,
                    ),
                });
            });
            this.wireScatter(card, plotId);
            this.wireTable(card, plotId);
        }
    }

    private wireScatter(card: HTMLElement, plotId: string): void {
        const svg = card.querySelector<SVGSVGElement>('svg.plot-scatter');
        if (!svg) return;
        svg.addEventListener('pointerover', (e) => {
            const target = e.target as Element;
            const rowId = target.getAttribute('data-row-id');
            if (rowId !== null) this.client.hover(parseInt(rowId, 10));
        });
        svg.addEventListener('pointerleave', () => this.client.hover(null));

        svg.addEventListener('pointerdown', (e) => {
            this.lassoPath = [{ x: e.offsetX, y: e.offsetY }];
            this.lassoPlot = plotId;
        });
        svg.addEventListener('pointermove', (e) => {
            if (this.lassoPlot !== plotId || !(e.buttons & 1)) return;
            this.lassoPath.push({ x: e.offsetX, y: e.offsetY });
        });
        svg.addEventListener('pointerup', () => {
            if (this.lassoPlot !== plotId || this.lassoPath.length < 3) {
                this.lassoPath = [];
                this.lassoPlot = null;
                return;
            }
            const spec = this.cards.get(plotId)?.spec;
            if (spec) this.sendLasso(plotId, spec, this.lassoPath);
            this.lassoPath = [];
            this.lassoPlot = null;
        });
    }

    sendLasso(plotId: string, spec: PlotSpec, path: Point[]): void {
        const simplified = simplifyLasso(path, MAX_LASSO_VERTICES);
        const xs: number[] = spec.series.x;
        const ys: number[] = spec.series.y;
        if (!xs.length || simplified.length < 3) return;
        const dataVerts = toDataCoords(
            simplified,
            { x: [46, PLOT_WIDTH - 12], y: [PLOT_HEIGHT - 34, 12] },
            {
                x: [Math.min(...xs), Math.max(...xs)],
                y: [Math.min(...ys), Math.max(...ys)],
            },
        );
        void this.client.sendEvent({
            type: 'lasso_drawn',
            source_plot_id: plotId,
            polygon: dataVerts.map((p) => [p.x, p.y]),
        });
    }

    private wireTable(card: HTMLElement, plotId: string): void {
        const spec = this.cards.get(plotId)?.spec;
        if (!spec || spec.kind !== 'table') return;
        const page: number = spec.series.page;
        const update = (next: number) =>
            void this.client.sendEvent({
                type: 'update_plot_config',
                plot_id: plotId,
                config: {
                    kind: 'table',
                    options: {
                        ...this.currentOptions(plotId),
                        page: next,
                    },
                },
            });
        card.querySelector('.page-prev')?.addEventListener('click', () =>
            update(page - 1),
        );
        card.querySelector('.page-next')?.addEventListener('click', () =>
            update(page + 1),
        );
    }

    showError(message: string): void {
        const banner = this.el('#error-banner');
        banner.textContent = message;
        banner.classList.remove('hidden');
        setTimeout(() => banner.classList.add('hidden'), 6000);
    }

    private el(selector: string): HTMLElement {
        return this.root.querySelector(selector) as HTMLElement;
    }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
    void new App(document.getElementById('app')!).start();
}
