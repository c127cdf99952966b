// SVG rendering of the current view state. Rebuilt wholesale on every
// state change; the graphs this serves are small enough that diffing
// would be premature.

import { edgeThickness, type Point } from "./layout.js";
import { visibleElements } from "./state.js";
import type { GraphNode, ViewState } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const PALETTE = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#d62728",
];

function colorKey(state: ViewState, node: GraphNode): string {
    if (state.colorMode === "module" && node.module !== undefined) {
        return `module ${node.module}`;
    }
    if (state.colorMode === "anatomical" && node.attrs["anatomical"]) {
        return node.attrs["anatomical"];
    }
    return "";
}

export function legendEntries(state: ViewState): Array<[string, string]> {
    const keys: string[] = [];
    for (const node of state.doc.nodes) {
        const key = colorKey(state, node);
        if (key && !keys.includes(key)) keys.push(key);
    }
    keys.sort();
    return keys.map((key, i) => [key, PALETTE[i % PALETTE.length]]);
}

function fillFor(state: ViewState, node: GraphNode, legend: Map<string, string>): string {
    return legend.get(colorKey(state, node)) ?? "#5577aa";
}

export interface RenderCallbacks {
    onSelect: (nodeId: string) => void;
}

export function renderGraph(
    svg: SVGSVGElement,
    state: ViewState,
    positions: Map<string, Point>,
    callbacks: RenderCallbacks,
): void {
    svg.replaceChildren();
    const view = visibleElements(state);
    const legend = new Map(legendEntries(state));
    const maxWeight = state.weightRange.max;

    const edgeGroup = document.createElementNS(SVG_NS, "g");
    for (const edge of view.edges) {
        const a = positions.get(edge.source);
        const b = positions.get(edge.target);
        if (!a || !b) continue;
        const line = document.createElementNS(SVG_NS, "line");
        line.setAttribute("x1", a.x.toFixed(1));
        line.setAttribute("y1", a.y.toFixed(1));
        line.setAttribute("x2", b.x.toFixed(1));
        line.setAttribute("y2", b.y.toFixed(1));
        line.setAttribute("stroke-width", edgeThickness(edge.weight, maxWeight).toFixed(2));
        line.classList.add("edge");
        const title = document.createElementNS(SVG_NS, "title");
        title.textContent = `${edge.source} — ${edge.target}: ${edge.weight}`;
        line.appendChild(title);
        edgeGroup.appendChild(line);
    }
    svg.appendChild(edgeGroup);

    const nodeGroup = document.createElementNS(SVG_NS, "g");
    for (const id of view.nodes) {
        const node = state.nodeById.get(id)!;
        const at = positions.get(id);
        if (!at) continue;
        const g = document.createElementNS(SVG_NS, "g");
        g.classList.add("node");
        if (view.dimmed.has(id)) g.classList.add("dimmed");
        if (state.selected === id) g.classList.add("focus");

        const circle = document.createElementNS(SVG_NS, "circle");
        circle.setAttribute("cx", at.x.toFixed(1));
        circle.setAttribute("cy", at.y.toFixed(1));
        const degree = state.neighbors.get(id)?.size ?? 0;
        circle.setAttribute("r", String(6 + Math.min(10, degree)));
        circle.setAttribute("fill", fillFor(state, node, legend));
        const title = document.createElementNS(SVG_NS, "title");
        title.textContent = `${node.label} (${node.id})`;
        circle.appendChild(title);
        circle.addEventListener("click", (event) => {
            event.stopPropagation();
            callbacks.onSelect(id);
        });
        g.appendChild(circle);

        const text = document.createElementNS(SVG_NS, "text");
        text.setAttribute("x", (at.x + 10).toFixed(1));
        text.setAttribute("y", (at.y + 4).toFixed(1));
        text.textContent = node.label;
        g.appendChild(text);
        nodeGroup.appendChild(g);
    }
    svg.appendChild(nodeGroup);
}

export function renderLegend(container: HTMLElement, state: ViewState): void {
    container.replaceChildren();
    for (const [key, color] of legendEntries(state)) {
        const item = document.createElement("span");
        item.className = "legend-item";
        const swatch = document.createElement("span");
        swatch.className = "swatch";
        swatch.style.backgroundColor = color;
        item.append(swatch, document.createTextNode(key));
        container.appendChild(item);
    }
}

export function renderDetails(panel: HTMLElement, state: ViewState): void {
    panel.replaceChildren();
    if (state.selected === null) {
        panel.textContent = "Click a node to see its ego network and measures.";
        return;
    }
    const node = state.nodeById.get(state.selected)!;
    const heading = document.createElement("h2");
    heading.textContent = node.label;
    const sub = document.createElement("p");
    sub.className = "muted";
    sub.textContent = node.id;
    panel.append(heading, sub);

    const list = document.createElement("dl");
    const push = (term: string, value: string) => {
        const dt = document.createElement("dt");
        dt.textContent = term;
        const dd = document.createElement("dd");
        dd.textContent = value;
        list.append(dt, dd);
    };
    push("neighbors", String(state.neighbors.get(node.id)?.size ?? 0));
    if (node.module !== undefined) push("module", String(node.module));
    for (const [key, value] of Object.entries(node.attrs)) push(key, value);
    for (const [key, value] of Object.entries(node.measures ?? {})) {
        push(key, Number.isInteger(value) ? String(value) : value.toFixed(6));
    }
    panel.appendChild(list);
}
