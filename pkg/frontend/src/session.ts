// Session files travel as plain text through the protocol; the browser
// side only downloads and re-uploads them.

export const SESSION_EXTENSION = '.xsession.json';

export function sessionFilename(date: Date = new Date()): string {
    const stamp = date.toISOString().slice(0, 19).replace(/[:T]/g, '-');
    return `linkplot-${stamp}${SESSION_EXTENSION}`;
}

/** Offer a session blob as a file download. */
export function downloadSession(data: string, filename?: string): void {
    const blob = new Blob([data], { type: 'application/json' });
    const url = URL.createObjectURL(blob);
    const a = document.createElement('a');
    a.href = url;
    a.download = filename ?? sessionFilename();
    a.click();
    URL.revokeObjectURL(url);
}

/** Read a chosen file as text for a load_session or load_data event. */
export function readChosenFile(file: File): Promise<string> {
    return file.text();
}

/** Decide which event a chosen file maps to, by extension. */
export function eventForFile(name: string, content: string):
    { type: string; [key: string]: any } {
    if (name.endsWith(SESSION_EXTENSION) || name.endsWith('.json')) {
        return { type: 'load_session_request', data: content };
    }
    return { type: 'load_data', data: content, format: 'csv' };
}
