// Protocol client: one sequential request queue per session (the engine
// is single-writer), transport failures retried once, hover forwarding
// throttled to latest-wins.

import { EngineEvent, Request, Response, Update } from './types.js';

export type Transport = (request: Request) => Promise<Response>;

export const HOVER_SPACING_MS = 50;

export function httpTransport(url: string = '/api/message'): Transport {
    return async (request: Request) => {
        const res = await fetch(url, {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify(request),
        });
        return (await res.json()) as Response;
    };
}

export class ProtocolClient {
    onUpdates: ((updates: Update[]) => void) | null = null;
    onError: ((message: string) => void) | null = null;

    private queue: Promise<void> = Promise.resolve();
    private pendingHover: { rowId: number | null } | null = null;
    private hoverTimer: ReturnType<typeof setTimeout> | null = null;
    private lastHoverAt = -Infinity;
    private pendingCount = 0;

    constructor(
        private transport: Transport,
        private hoverSpacingMs: number = HOVER_SPACING_MS,
        private now: () => number = () => Date.now(),
    ) {}

    /** True while any request is queued or in flight. */
    get busy(): boolean {
        return this.pendingCount > 0;
    }

    /** Enqueue a request; requests are issued strictly one at a time. */
    send(request: Request): Promise<Response> {
        this.pendingCount += 1;
        const result = this.queue.then(() => this.issue(request));
        this.queue = result.then(
            () => void (this.pendingCount -= 1),
            () => void (this.pendingCount -= 1),
        );
        return result;
    }

    async sendEvent(event: EngineEvent): Promise<Response> {
        const response = await this.send({ kind: 'event', event });
        if (response.kind === 'updates' && this.onUpdates) {
            this.onUpdates(response.updates);
        }
        return response;
    }

    /** Forward a hover gesture; calls at most once per spacing window,
     *  and a burst always ends with the latest value sent. */
    hover(rowId: number | null): void {
        this.pendingHover = { rowId };
        const elapsed = this.now() - this.lastHoverAt;
        if (elapsed >= this.hoverSpacingMs) {
            this.flushHover();
        } else if (this.hoverTimer === null) {
            this.hoverTimer = setTimeout(
                () => this.flushHover(),
                this.hoverSpacingMs - elapsed,
            );
        }
    }

    private flushHover(): void {
        if (this.hoverTimer !== null) {
            clearTimeout(this.hoverTimer);
            this.hoverTimer = null;
        }
        if (!this.pendingHover) return;
        const { rowId } = this.pendingHover;
        this.pendingHover = null;
        this.lastHoverAt = this.now();
        void this.sendEvent({ type: 'hover_point', row_id: rowId });
    }

    private async issue(request: Request): Promise<Response> {
        try {
            return await this.attemptWithRetry(request);
        } catch (e) {
            const message = e instanceof Error ? e.message : String(e);
            if (this.onError) this.onError(message);
            return { kind: 'error', code: 'transport', message };
        }
    }

    private async attemptWithRetry(request: Request): Promise<Response> {
        try {
            return await this.transport(request);
        } catch {
            // one retry, then surface the failure
            return await this.transport(request);
        }
    }
}
