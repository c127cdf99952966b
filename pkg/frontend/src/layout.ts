// Deterministic force-directed layout. The PRNG is seeded from a hash of
// the document text, so the same file always lands in the same picture —
// no rendering library required.

import type { GraphDocument } from "./types.js";

export interface Point {
    x: number;
    y: number;
}

/** FNV-1a over the document's canonical JSON text. */
export function hashDocument(doc: GraphDocument): number {
    const text = JSON.stringify(doc);
    let hash = 0x811c9dc5;
    for (let i = 0; i < text.length; i++) {
        hash ^= text.charCodeAt(i);
        hash = Math.imul(hash, 0x01000193);
    }
    return hash >>> 0;
}

/** mulberry32: small, fast, good enough for jittering start positions. */
export function seededRandom(seed: number): () => number {
    let a = seed >>> 0;
    return () => {
        a = (a + 0x6d2b79f5) | 0;
        let t = Math.imul(a ^ (a >>> 15), 1 | a);
        t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

/** Spring-electric layout with a fixed iteration budget. Positions are a
 *  pure function of (document, width, height). */
export function computeLayout(
    doc: GraphDocument,
    width: number,
    height: number,
    iterations = 300,
): Map<string, Point> {
    const ids = doc.nodes.map((n) => n.id);
    const n = ids.length;
    const index = new Map(ids.map((id, i) => [id, i]));
    const rand = seededRandom(hashDocument(doc));
    const radius = Math.min(width, height) * 0.42;
    const xs = new Float64Array(n);
    const ys = new Float64Array(n);
    for (let i = 0; i < n; i++) {
        // circle start plus jitter: stable and avoids coincident points
        const angle = (2 * Math.PI * i) / Math.max(n, 1);
        xs[i] = width / 2 + radius * Math.cos(angle) + (rand() - 0.5) * 10;
        ys[i] = height / 2 + radius * Math.sin(angle) + (rand() - 0.5) * 10;
    }
    if (n <= 1) {
        return new Map(ids.map((id, i) => [id, { x: xs[i], y: ys[i] }]));
    }

    const springs = doc.edges.map((e) => [index.get(e.source)!, index.get(e.target)!]);
    const area = width * height;
    const k = Math.sqrt(area / n) * 0.7;
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);

    for (let step = 0; step < iterations; step++) {
        fx.fill(0);
        fy.fill(0);
        for (let i = 0; i < n; i++) {
            for (let j = i + 1; j < n; j++) {
                let dx = xs[i] - xs[j];
                let dy = ys[i] - ys[j];
                let d2 = dx * dx + dy * dy;
                if (d2 < 1e-6) d2 = 1e-6;
                const repulse = (k * k) / d2;
                fx[i] += dx * repulse;
                fy[i] += dy * repulse;
                fx[j] -= dx * repulse;
                fy[j] -= dy * repulse;
            }
        }
        for (const [a, b] of springs) {
            const dx = xs[a] - xs[b];
            const dy = ys[a] - ys[b];
            const dist = Math.sqrt(dx * dx + dy * dy) || 1e-3;
            const attract = (dist * dist) / k / dist;
            fx[a] -= dx * attract;
            fy[a] -= dy * attract;
            fx[b] += dx * attract;
            fy[b] += dy * attract;
        }
        const temperature = 0.1 * Math.min(width, height) * (1 - step / iterations);
        for (let i = 0; i < n; i++) {
            const len = Math.sqrt(fx[i] * fx[i] + fy[i] * fy[i]) || 1e-9;
            const cap = Math.min(len, temperature);
            xs[i] += (fx[i] / len) * cap;
            ys[i] += (fy[i] / len) * cap;
            const margin = 20;
            xs[i] = Math.min(width - margin, Math.max(margin, xs[i]));
            ys[i] = Math.min(height - margin, Math.max(margin, ys[i]));
        }
    }
    return new Map(ids.map((id, i) => [id, { x: xs[i], y: ys[i] }]));
}

/** Edge thickness: square-root scaling keeps a 1..80k+ weight range legible. */
export function edgeThickness(weight: number, maxWeight: number): number {
    if (maxWeight <= 0) return 1;
    return 1 + 7 * Math.sqrt(weight / maxWeight);
}
