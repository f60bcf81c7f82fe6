import { describe, expect, it } from 'vitest';

import { configFromForm, formToOptions, renderConfigForm } from '../src/forms.js';
import { TableSummary } from '../src/types.js';

const SCHEMA = {
    x_column: { type: 'column' as const, required: true },
    bin_count: { type: 'int' as const, default: 20 },
    split_by_cluster: { type: 'bool' as const, default: false },
};

const SUMMARY: TableSummary = {
    row_count: 3,
    columns: [
        { name: 'a', kind: 'numeric' },
        { name: 'b', kind: 'text' },
    ],
    aux: [{ name: 'clusters', kind: 'categorical', origin: 'cluster' }],
};

describe('renderConfigForm', () => {
    it('offers dataset and aux columns in column dropdowns', () => {
        const html = renderConfigForm('histogram', SCHEMA, SUMMARY);
        expect(html).toContain('<option value="a"');
        expect(html).toContain('<option value="clusters"');
    });

    it('marks the current value as selected', () => {
        const html = renderConfigForm('histogram', SCHEMA, SUMMARY, {
            x_column: 'b',
        });
        expect(html).toContain('value="b" selected');
    });

    it('falls back to schema defaults', () => {
        const html = renderConfigForm('histogram', SCHEMA, SUMMARY);
        expect(html).toContain('value="20"');
    });
});

describe('formToOptions', () => {
    it('coerces field types and skips blanks', () => {
        const options = formToOptions(SCHEMA, {
            x_column: 'a',
            bin_count: '12',
            split_by_cluster: 'on',
        });
        expect(options).toEqual({
            x_column: 'a',
            bin_count: 12,
            split_by_cluster: true,
        });
    });

    it('omits unset optional fields entirely', () => {
        expect(formToOptions(SCHEMA, { x_column: 'a' })).toEqual({
            x_column: 'a',
        });
    });

    it('wraps into a PlotConfig document', () => {
        expect(configFromForm('histogram', SCHEMA, { x_column: 'a' })).toEqual({
            kind: 'histogram',
            options: { x_column: 'a' },
        });
    });
});
