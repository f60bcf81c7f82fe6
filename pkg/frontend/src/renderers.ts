// PlotSpec -> markup. Every renderer is a pure function from a spec to
// an SVG/HTML string, so the drawing layer is testable without a DOM.

import { PlotSpec, SUPPORTED_SPEC_VERSION } from './types.js';

export const PLOT_WIDTH = 380;
export const PLOT_HEIGHT = 280;
const MARGIN = { top: 12, right: 12, bottom: 34, left: 46 };
const UNCLUSTERED_COLOR = '#9aa0a6';
const SELECTED_STROKE = '#111111';

export function escapeHtml(s: string): string {
    return s
        .replace(/&/g, '&amp;')
        .replace(/</g, '&lt;')
        .replace(/>/g, '&gt;')
        .replace(/"/g, '&quot;');
}

interface Scale {
    (v: number): number;
    domain: [number, number];
}

function linearScale(domain: [number, number], range: [number, number]): Scale {
    let [d0, d1] = domain;
    if (d0 === d1) {
        d0 -= 0.5;
        d1 += 0.5;
    }
    const f = ((v: number) =>
        range[0] + ((v - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
    f.domain = [d0, d1];
    return f;
}

function extent(values: number[]): [number, number] {
    return [Math.min(...values), Math.max(...values)];
}

function axes(x: Scale, y: Scale, xLabel: string, yLabel: string): string {
    const x0 = MARGIN.left;
    const x1 = PLOT_WIDTH - MARGIN.right;
    const y0 = PLOT_HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    const fmt = (v: number) => {
        const s = v.toPrecision(3);
        return String(parseFloat(s));
    };
    const parts = [
        `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#444"/>`,
        `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#444"/>`,
        `<text x="${(x0 + x1) / 2}" y="${PLOT_HEIGHT - 4}" class="axis-label"` +
            ` text-anchor="middle">${escapeHtml(xLabel)}</text>`,
        `<text x="12" y="${(y0 + y1) / 2}" class="axis-label"` +
            ` text-anchor="middle" transform="rotate(-90 12 ${(y0 + y1) / 2})">` +
            `${escapeHtml(yLabel)}</text>`,
        `<text x="${x0}" y="${y0 + 14}" class="tick">${fmt(x.domain[0])}</text>`,
        `<text x="${x1}" y="${y0 + 14}" class="tick" text-anchor="end">` +
            `${fmt(x.domain[1])}</text>`,
        `<text x="${x0 - 4}" y="${y0}" class="tick" text-anchor="end">` +
            `${fmt(y.domain[0])}</text>`,
        `<text x="${x0 - 4}" y="${y1 + 8}" class="tick" text-anchor="end">` +
            `${fmt(y.domain[1])}</text>`,
    ];
    return parts.join('');
}

function svgOpen(kind: string): string {
    return (
        `<svg xmlns="http://www.w3.org/2000/svg" class="plot plot-${kind}" ` +
        `viewBox="0 0 ${PLOT_WIDTH} ${PLOT_HEIGHT}" ` +
        `width="${PLOT_WIDTH}" height="${PLOT_HEIGHT}">`
    );
}

export function colorFor(
    index: number | null,
    palette: string[],
): string {
    if (index === null || index === undefined) return UNCLUSTERED_COLOR;
    return palette[index % palette.length];
}

export function renderScatter(spec: PlotSpec): string {
    const { x, y, row_ids, color_index, selected } = spec.series;
    const palette: string[] = spec.encodings.palette ?? [];
    if (!x.length) {
        return `${svgOpen('scatter')}<text x="20" y="30">no points</text></svg>`;
    }
    const sx = linearScale(extent(x), [MARGIN.left, PLOT_WIDTH - MARGIN.right]);
    const sy = linearScale(extent(y), [PLOT_HEIGHT - MARGIN.bottom, MARGIN.top]);
    const marks = x.map((xv: number, i: number) => {
        const fill = colorFor(color_index[i], palette);
        const stroke = selected[i]
            ? ` stroke="${SELECTED_STROKE}" stroke-width="1.5"`
            : '';
        return (
            `<circle class="mark" data-row-id="${row_ids[i]}" ` +
            `cx="${sx(xv).toFixed(1)}" cy="${sy(y[i]).toFixed(1)}" r="4" ` +
            `fill="${fill}"${stroke}/>`
        );
    });
    return (
        svgOpen('scatter') +
        axes(sx, sy, spec.encodings.x_label, spec.encodings.y_label) +
        marks.join('') +
        '</svg>'
    );
}

export function renderHistogram(spec: PlotSpec): string {
    const edges: number[] = spec.series.edges;
    const palette: string[] = spec.encodings.palette ?? [];
    const legend: Record<string, number> = spec.encodings.color_legend ?? {};
    const byCluster: Record<string, number[]> | undefined =
        spec.series.counts_by_cluster;

    // stack per-cluster counts when present, else a single series
    const stacks: [string | null, number[]][] = byCluster
        ? Object.keys(byCluster).map((k) => [k, byCluster[k]])
        : [[null, spec.series.counts]];
    const n = edges.length - 1;
    const totals = Array.from({ length: n }, (_, i) =>
        stacks.reduce((acc, [, counts]) => acc + counts[i], 0),
    );
    const sx = linearScale([edges[0], edges[n]], [
        MARGIN.left,
        PLOT_WIDTH - MARGIN.right,
    ]);
    const sy = linearScale([0, Math.max(...totals, 1)], [
        PLOT_HEIGHT - MARGIN.bottom,
        MARGIN.top,
    ]);
    const bars: string[] = [];
    for (let i = 0; i < n; i++) {
        let base = 0;
        for (const [label, counts] of stacks) {
            const c = counts[i];
            if (!c) continue;
            const fill =
                label === null
                    ? palette[0] ?? UNCLUSTERED_COLOR
                    : colorFor(legend[label] ?? null, palette);
            bars.push(
                `<rect class="bar" x="${sx(edges[i]).toFixed(1)}" ` +
                    `y="${sy(base + c).toFixed(1)}" ` +
                    `width="${(sx(edges[i + 1]) - sx(edges[i]) - 1).toFixed(1)}" ` +
                    `height="${(sy(base) - sy(base + c)).toFixed(1)}" ` +
                    `fill="${fill}"/>`,
            );
            base += c;
        }
    }
    return (
        svgOpen('histogram') +
        axes(sx, sy, spec.encodings.x_label, 'count') +
        bars.join('') +
        '</svg>'
    );
}

export function renderHeatmap(spec: PlotSpec): string {
    const xe: number[] = spec.series.x_edges;
    const ye: number[] = spec.series.y_edges;
    const grid: number[][] = spec.series.grid;
    const sx = linearScale([xe[0], xe[xe.length - 1]], [
        MARGIN.left,
        PLOT_WIDTH - MARGIN.right,
    ]);
    const sy = linearScale([ye[0], ye[ye.length - 1]], [
        PLOT_HEIGHT - MARGIN.bottom,
        MARGIN.top,
    ]);
    const peak = Math.max(1, ...grid.flat());
    const cells: string[] = [];
    for (let xi = 0; xi < grid.length; xi++) {
        for (let yi = 0; yi < grid[xi].length; yi++) {
            const count = grid[xi][yi];
            if (!count) continue;
            cells.push(
                `<rect class="cell" x="${sx(xe[xi]).toFixed(1)}" ` +
                    `y="${sy(ye[yi + 1]).toFixed(1)}" ` +
                    `width="${(sx(xe[xi + 1]) - sx(xe[xi])).toFixed(1)}" ` +
                    `height="${(sy(ye[yi]) - sy(ye[yi + 1])).toFixed(1)}" ` +
                    `fill="#1f77b4" fill-opacity="${(count / peak).toFixed(3)}"/>`,
            );
        }
    }
    return (
        svgOpen('heatmap') +
        axes(sx, sy, spec.encodings.x_label, spec.encodings.y_label) +
        cells.join('') +
        '</svg>'
    );
}

export function renderBarplot(spec: PlotSpec): string {
    const groups: (string | null)[] = spec.series.groups;
    const values: (number | null)[] = spec.series.values;
    const palette: string[] = spec.encodings.palette ?? [];
    const present = values.filter((v): v is number => v !== null);
    const top = Math.max(...present, 0);
    const bottom = Math.min(...present, 0);
    const sy = linearScale([bottom, top || 1], [
        PLOT_HEIGHT - MARGIN.bottom,
        MARGIN.top,
    ]);
    const span = PLOT_WIDTH - MARGIN.left - MARGIN.right;
    const step = span / Math.max(groups.length, 1);
    const bars = groups.map((g, i) => {
        const v = values[i];
        const cx = MARGIN.left + i * step;
        const label =
            `<text x="${(cx + step / 2).toFixed(1)}" ` +
            `y="${PLOT_HEIGHT - MARGIN.bottom + 14}" class="tick" ` +
            `text-anchor="middle">${escapeHtml(g ?? 'missing')}</text>`;
        if (v === null) {
            // all-missing group: labeled gap, no bar
            return label;
        }
        const y = Math.min(sy(v), sy(0));
        const h = Math.abs(sy(0) - sy(v));
        return (
            `<rect class="bar" data-group="${escapeHtml(g ?? '')}" ` +
            `x="${(cx + step * 0.15).toFixed(1)}" y="${y.toFixed(1)}" ` +
            `width="${(step * 0.7).toFixed(1)}" height="${h.toFixed(1)}" ` +
            `fill="${colorFor(i, palette)}"/>` + label
        );
    });
    const sx = linearScale([0, 1], [MARGIN.left, PLOT_WIDTH - MARGIN.right]);
    return (
        svgOpen('barplot') +
        axes(sx, sy, spec.encodings.x_label, spec.encodings.y_label) +
        bars.join('') +
        '</svg>'
    );
}

export function renderTable(spec: PlotSpec): string {
    const { columns, rows, row_ids, selected, page, page_count } = spec.series;
    const head = (columns as string[])
        .map((c) => `<th>${escapeHtml(c)}</th>`)
        .join('');
    const body = (rows as any[][])
        .map((row, i) => {
            const cls = selected[i] ? ' class="selected"' : '';
            const cells = row
                .map((cell) =>
                    `<td>${cell === null ? '' : escapeHtml(String(cell))}</td>`,
                )
                .join('');
            return `<tr data-row-id="${row_ids[i]}"${cls}>${cells}</tr>`;
        })
        .join('');
    return (
        `<div class="plot plot-table">` +
        `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>` +
        `<div class="pager">` +
        `<button class="page-prev"${page === 0 ? ' disabled' : ''}>&lt;</button>` +
        `<span>page ${page + 1} / ${page_count}</span>` +
        `<button class="page-next"${
            page + 1 >= page_count ? ' disabled' : ''
        }>&gt;</button></div></div>`
    );
}

export function renderSmiles(spec: PlotSpec): string {
    const series = spec.series;
    if (!series.smiles) {
        return `<div class="plot plot-smiles placeholder">hover a point</div>`;
    }
    const caption =
        `<div class="caption">row ${series.row_id}: ` +
        `<code>${escapeHtml(series.smiles)}</code></div>`;
    if (series.error) {
        return (
            `<div class="plot plot-smiles">` +
            `<div class="parse-error">${escapeHtml(series.error)}</div>` +
            caption + `</div>`
        );
    }
    // the engine's SVG is a complete document; embed it verbatim
    return `<div class="plot plot-smiles">${series.svg}${caption}</div>`;
}

const RENDERERS: Record<string, (spec: PlotSpec) => string> = {
    scatter: renderScatter,
    histogram: renderHistogram,
    heatmap: renderHeatmap,
    barplot: renderBarplot,
    table: renderTable,
    smiles: renderSmiles,
};

export function renderLegend(spec: PlotSpec): string {
    const legend: Record<string, number> = spec.encodings.color_legend ?? {};
    const palette: string[] = spec.encodings.palette ?? [];
    const labels = Object.keys(legend);
    if (!labels.length) return '';
    const items = labels
        .map(
            (lab) =>
                `<span class="legend-item">` +
                `<span class="swatch" style="background:${colorFor(
                    legend[lab],
                    palette,
                )}"></span>${escapeHtml(lab)}</span>`,
        )
        .join('');
    return `<div class="legend">${items}</div>`;
}

export function renderPlot(spec: PlotSpec): string {
    if (spec.schema_version !== SUPPORTED_SPEC_VERSION) {
        return (
            `<div class="banner error">unsupported plot spec version ` +
            `${spec.schema_version}</div>`
        );
    }
    const renderer = RENDERERS[spec.kind];
    const body = renderer
        ? renderer(spec)
        : `<div class="plot plot-generic"><pre>${escapeHtml(
              JSON.stringify(spec.series, null, 2),
          )}</pre></div>`;
    const badges = (spec.warnings ?? [])
        .map((w) => `<span class="badge warning">${escapeHtml(w)}</span>`)
        .join('');
    return badges + renderLegend(spec) + body;
}
