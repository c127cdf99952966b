// Pure view-state logic: document validation, search, ego selection,
// weight thresholding. No DOM access, so the whole module is unit-testable.

import type {
    ColorMode,
    GraphDocument,
    GraphEdge,
    GraphNode,
    SearchMatch,
    ViewState,
    VisibleElements,
} from "./types.js";

export class SchemaError extends Error {}

function fail(message: string): never {
    throw new SchemaError(message);
}

function isRecord(value: unknown): value is Record<string, unknown> {
    return typeof value === "object" && value !== null && !Array.isArray(value);
}

/** Validate an untrusted parsed JSON document into a GraphDocument. */
export function loadDocument(raw: unknown): GraphDocument {
    if (!isRecord(raw)) fail("document must be a JSON object");
    const { meta, nodes, edges } = raw as Partial<GraphDocument>;
    if (!isRecord(meta)) fail("document is missing 'meta'");
    if (typeof meta.directed !== "boolean" || typeof meta.weighted !== "boolean") {
        fail("meta must carry boolean 'directed' and 'weighted'");
    }
    if (!isRecord(meta.counts)) fail("meta is missing 'counts'");
    if (!Array.isArray(nodes)) fail("document is missing 'nodes'");
    if (!Array.isArray(edges)) fail("document is missing 'edges'");

    const seen = new Set<string>();
    for (const node of nodes) {
        if (!isRecord(node) || typeof node.id !== "string" || node.id.length === 0) {
            fail("every node needs a non-empty string id");
        }
        if (typeof node.label !== "string") fail(`node ${node.id}: label must be a string`);
        if (!isRecord(node.attrs)) fail(`node ${node.id}: attrs must be an object`);
        if (seen.has(node.id)) fail(`duplicate node id: ${node.id}`);
        seen.add(node.id);
    }
    for (const edge of edges) {
        if (!isRecord(edge)) fail("every edge must be an object");
        if (typeof edge.source !== "string" || typeof edge.target !== "string") {
            fail("every edge needs string source and target");
        }
        if (typeof edge.weight !== "number" || !(edge.weight >= 0)) {
            fail(`edge ${edge.source}-${edge.target}: weight must be a non-negative number`);
        }
        if (!seen.has(edge.source)) fail(`edge references unknown node: ${edge.source}`);
        if (!seen.has(edge.target)) fail(`edge references unknown node: ${edge.target}`);
    }
    if (meta.counts.nodes !== nodes.length || meta.counts.edges !== edges.length) {
        fail("meta counts disagree with the node/edge arrays");
    }
    return raw as unknown as GraphDocument;
}

export function createViewState(doc: GraphDocument): ViewState {
    const nodeById = new Map<string, GraphNode>();
    for (const node of doc.nodes) nodeById.set(node.id, node);
    const neighbors = new Map<string, Set<string>>();
    for (const node of doc.nodes) neighbors.set(node.id, new Set());
    for (const edge of doc.edges) {
        neighbors.get(edge.source)!.add(edge.target);
        neighbors.get(edge.target)!.add(edge.source);
    }
    const weights = doc.edges.map((e) => e.weight);
    const min = weights.length ? Math.min(...weights) : 0;
    const max = weights.length ? Math.max(...weights) : 0;
    const hasModules = doc.nodes.some((n) => n.module !== undefined);
    return {
        doc,
        nodeById,
        neighbors,
        selected: null,
        query: "",
        threshold: min,
        weightRange: { min, max },
        colorMode: hasModules ? "module" : "uniform",
    };
}

/** Case-insensitive substring search over labels and ids; top 10 by match
 *  position, then id. An empty query matches nothing. */
export function search(state: ViewState, query: string): SearchMatch[] {
    const needle = query.trim().toLowerCase();
    if (!needle) return [];
    const matches: SearchMatch[] = [];
    for (const node of state.doc.nodes) {
        const inLabel = node.label.toLowerCase().indexOf(needle);
        const inId = node.id.toLowerCase().indexOf(needle);
        const position =
            inLabel < 0 ? inId : inId < 0 ? inLabel : Math.min(inLabel, inId);
        if (position >= 0) {
            matches.push({ id: node.id, label: node.label, position });
        }
    }
    matches.sort((a, b) => a.position - b.position || (a.id < b.id ? -1 : 1));
    return matches.slice(0, 10);
}

/** Restrict the view to a node's depth-1 ego network (alter-alter edges
 *  included). Unknown ids leave the state unchanged. */
export function select(state: ViewState, nodeId: string): ViewState {
    if (!state.nodeById.has(nodeId)) return state;
    return { ...state, selected: nodeId };
}

export function clearSelection(state: ViewState): ViewState {
    return { ...state, selected: null };
}

export function setThreshold(state: ViewState, minWeight: number): ViewState {
    const { min, max } = state.weightRange;
    const threshold = Math.min(Math.max(minWeight, min), max);
    return { ...state, threshold };
}

export function setColorMode(state: ViewState, colorMode: ColorMode): ViewState {
    return { ...state, colorMode };
}

function egoNodes(state: ViewState, focus: string): Set<string> {
    const keep = new Set<string>([focus]);
    for (const neighbor of state.neighbors.get(focus) ?? []) keep.add(neighbor);
    return keep;
}

/** What should currently be drawn: the selection's ego network (or the whole
 *  graph), edges at or above the threshold, and sub-threshold leftovers as
 *  dimmed nodes rather than removed ones. */
export function visibleElements(state: ViewState): VisibleElements {
    let nodeIds: Set<string>;
    let edges: GraphEdge[];
    if (state.selected !== null) {
        nodeIds = egoNodes(state, state.selected);
        edges = state.doc.edges.filter(
            (e) => nodeIds.has(e.source) && nodeIds.has(e.target),
        );
    } else {
        nodeIds = new Set(state.nodeById.keys());
        edges = state.doc.edges;
    }
    const visibleEdges = edges.filter((e) => e.weight >= state.threshold);
    const touched = new Set<string>();
    for (const edge of visibleEdges) {
        touched.add(edge.source);
        touched.add(edge.target);
    }
    const dimmed = new Set<string>();
    for (const id of nodeIds) {
        if (!touched.has(id)) dimmed.add(id);
    }
    return { nodes: [...nodeIds], edges: visibleEdges, dimmed };
}

/** Side-panel content for a node: its measures from the document, if any. */
export function nodeDetails(state: ViewState, nodeId: string): GraphNode | null {
    return state.nodeById.get(nodeId) ?? null;
}
