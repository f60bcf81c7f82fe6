// Freehand lasso capture: pointer samples in, a bounded polygon out.

import { Point } from './types.js';

export const MAX_LASSO_VERTICES = 100;

function perpendicularDistance(p: Point, a: Point, b: Point): number {
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy);
    if (len === 0) return Math.hypot(p.x - a.x, p.y - a.y);
    return Math.abs(dy * p.x - dx * p.y + b.x * a.y - b.y * a.x) / len;
}

function douglasPeucker(points: Point[], epsilon: number): Point[] {
    if (points.length < 3) return points.slice();
    let maxDist = 0;
    let index = 0;
    const last = points.length - 1;
    for (let i = 1; i < last; i++) {
        const d = perpendicularDistance(points[i], points[0], points[last]);
        if (d > maxDist) {
            maxDist = d;
            index = i;
        }
    }
    if (maxDist <= epsilon) {
        return [points[0], points[last]];
    }
    const left = douglasPeucker(points.slice(0, index + 1), epsilon);
    const right = douglasPeucker(points.slice(index), epsilon);
    return left.slice(0, -1).concat(right);
}

/** Simplify a freehand path to at most MAX_LASSO_VERTICES vertices,
 *  preserving shape by increasing the tolerance until it fits. */
export function simplifyLasso(
    points: Point[],
    maxVertices: number = MAX_LASSO_VERTICES,
): Point[] {
    let result = dedupe(points);
    let epsilon = 1e-9;
    while (result.length > maxVertices) {
        result = douglasPeucker(result, epsilon);
        epsilon = epsilon < 0.01 ? 0.01 : epsilon * 2;
    }
    return result;
}

function dedupe(points: Point[]): Point[] {
    const out: Point[] = [];
    for (const p of points) {
        const prev = out[out.length - 1];
        if (prev && prev.x === p.x && prev.y === p.y) continue;
        out.push(p);
    }
    return out;
}

/** Map pixel-space lasso vertices into data coordinates using the same
 *  linear mapping the scatter renderer applied. */
export function toDataCoords(
    points: Point[],
    pixel: { x: [number, number]; y: [number, number] },
    data: { x: [number, number]; y: [number, number] },
): Point[] {
    const fx = (v: number) =>
        data.x[0] +
        ((v - pixel.x[0]) / (pixel.x[1] - pixel.x[0])) * (data.x[1] - data.x[0]);
    const fy = (v: number) =>
        data.y[0] +
        ((v - pixel.y[0]) / (pixel.y[1] - pixel.y[0])) * (data.y[1] - data.y[0]);
    return points.map((p) => ({ x: fx(p.x), y: fy(p.y) }));
}
