// Page wiring: load a document (file picker, drag-drop, or the bundled
// sample when served over HTTP), then keep the SVG, legend, side panel and
// controls in sync with the view state.

import { computeLayout, type Point } from "./layout.js";
import { renderDetails, renderGraph, renderLegend } from "./render.js";
import {
    clearSelection,
    createViewState,
    loadDocument,
    SchemaError,
    search,
    select,
    setColorMode,
    setThreshold,
} from "./state.js";
import type { ColorMode, ViewState } from "./types.js";

const svg = document.getElementById("graph") as unknown as SVGSVGElement;
const banner = document.getElementById("banner")!;
const details = document.getElementById("details")!;
const legend = document.getElementById("legend")!;
const searchBox = document.getElementById("search") as HTMLInputElement;
const results = document.getElementById("results")!;
const slider = document.getElementById("threshold") as HTMLInputElement;
const sliderValue = document.getElementById("threshold-value")!;
const colorSelect = document.getElementById("color-mode") as HTMLSelectElement;
const filePicker = document.getElementById("file") as HTMLInputElement;
const clearButton = document.getElementById("clear")!;

let state: ViewState | null = null;
let positions: Map<string, Point> = new Map();

function redraw(): void {
    if (!state) return;
    renderGraph(svg, state, positions, { onSelect: handleSelect });
    renderLegend(legend, state);
    renderDetails(details, state);
}

function handleSelect(nodeId: string): void {
    if (!state) return;
    state = select(state, nodeId);
    redraw();
}

function showError(message: string): void {
    banner.textContent = message;
    banner.classList.add("error");
    banner.classList.remove("hidden");
}

function showInfo(message: string): void {
    banner.textContent = message;
    banner.classList.remove("error");
    banner.classList.remove("hidden");
}

function loadFromText(text: string, sourceName: string): void {
    let parsed: unknown;
    try {
        parsed = JSON.parse(text);
    } catch {
        showError(`${sourceName}: not valid JSON`);
        return;
    }
    let doc;
    try {
        doc = loadDocument(parsed);
    } catch (err) {
        if (err instanceof SchemaError) {
            showError(`${sourceName}: ${err.message}`);
            return;
        }
        throw err;
    }
    state = createViewState(doc);
    positions = computeLayout(doc, svg.clientWidth || 900, svg.clientHeight || 600);
    slider.min = String(state.weightRange.min);
    slider.max = String(state.weightRange.max);
    slider.step = "any";
    slider.value = String(state.threshold);
    sliderValue.textContent = String(state.threshold);
    colorSelect.value = state.colorMode;
    const { nodes, edges } = doc.meta.counts;
    showInfo(`${sourceName}: ${nodes} drugs, ${edges} pairs`);
    results.replaceChildren();
    redraw();
}

searchBox.addEventListener("input", () => {
    results.replaceChildren();
    if (!state) return;
    for (const match of search(state, searchBox.value)) {
        const item = document.createElement("li");
        item.textContent = `${match.label} (${match.id})`;
        item.addEventListener("click", () => handleSelect(match.id));
        results.appendChild(item);
    }
});

slider.addEventListener("input", () => {
    if (!state) return;
    state = setThreshold(state, Number(slider.value));
    sliderValue.textContent = Number(slider.value).toFixed(0);
    redraw();
});

colorSelect.addEventListener("change", () => {
    if (!state) return;
    state = setColorMode(state, colorSelect.value as ColorMode);
    redraw();
});

clearButton.addEventListener("click", () => {
    if (!state) return;
    state = clearSelection(state);
    redraw();
});

svg.addEventListener("click", () => {
    if (!state || state.selected === null) return;
    state = clearSelection(state);
    redraw();
});

filePicker.addEventListener("change", async () => {
    const file = filePicker.files?.[0];
    if (file) loadFromText(await file.text(), file.name);
});

document.body.addEventListener("dragover", (e) => e.preventDefault());
document.body.addEventListener("drop", async (e) => {
    e.preventDefault();
    const file = e.dataTransfer?.files?.[0];
    if (file) loadFromText(await file.text(), file.name);
});

// When served over HTTP from the repository root's frontend/ directory,
// offer the shared sample document out of the box.
fetch("../fixtures/explorer_graph.json")
    .then((response) => (response.ok ? response.text() : Promise.reject()))
    .then((text) => loadFromText(text, "sample network"))
    .catch(() => showInfo("Open or drop an exported network JSON file to begin."));
