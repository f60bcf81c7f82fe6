// Config forms generated from the engine's per-kind config schemas.

import { PlotConfig, TableSummary } from './types.js';
import { escapeHtml } from './renderers.js';

export interface FieldDescriptor {
    type: 'column' | 'int' | 'bool' | 'string';
    required?: boolean;
    default?: any;
}

export type ConfigSchema = Record<string, FieldDescriptor>;

/** Render a schema as form fields; column fields become dropdowns over
 *  the current table's columns. */
export function renderConfigForm(
    kind: string,
    schema: ConfigSchema,
    summary: TableSummary | null,
    current: Record<string, any> = {},
): string {
    const columns = summary
        ? [...summary.columns.map((c) => c.name),
           ...summary.aux.map((a) => a.name)]
        : [];
    const fields = Object.entries(schema).map(([name, desc]) => {
        const value = current[name] ?? desc.default ?? '';
        let input: string;
        if (desc.type === 'column') {
            const opts = columns
                .map(
                    (c) =>
                        `<option value="${escapeHtml(c)}"` +
                        `${c === value ? ' selected' : ''}>` +
                        `${escapeHtml(c)}</option>`,
                )
                .join('');
            const blank = desc.required ? '' : `<option value=""></option>`;
            input = `<select name="${name}">${blank}${opts}</select>`;
        } else if (desc.type === 'bool') {
            input =
                `<input type="checkbox" name="${name}"` +
                `${value ? ' checked' : ''}/>`;
        } else if (desc.type === 'int') {
            input =
                `<input type="number" step="1" name="${name}" ` +
                `value="${escapeHtml(String(value))}"/>`;
        } else {
            input =
                `<input type="text" name="${name}" ` +
                `value="${escapeHtml(String(value))}"/>`;
        }
        const req = desc.required ? ' class="required"' : '';
        return (
            `<label${req}>${escapeHtml(name)}${input}</label>`
        );
    });
    return (
        `<form class="plot-config" data-kind="${escapeHtml(kind)}">` +
        fields.join('') +
        `<button type="submit">apply</button></form>`
    );
}

/** Read a submitted form back into plot options, respecting field types. */
export function formToOptions(
    schema: ConfigSchema,
    values: Record<string, string | boolean>,
): Record<string, any> {
    const options: Record<string, any> = {};
    for (const [name, desc] of Object.entries(schema)) {
        const raw = values[name];
        if (raw === undefined || raw === '') continue;
        if (desc.type === 'int') {
            options[name] = parseInt(String(raw), 10);
        } else if (desc.type === 'bool') {
            options[name] = raw === true || raw === 'true' || raw === 'on';
        } else {
            options[name] = raw;
        }
    }
    return options;
}

export function configFromForm(
    kind: string,
    schema: ConfigSchema,
    values: Record<string, string | boolean>,
): PlotConfig {
    return { kind, options: formToOptions(schema, values) };
}
