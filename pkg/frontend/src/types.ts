// Shapes of the exported graph document (see ../schemas/explorer.schema.json)
// and of the explorer's view state.

export interface GraphMeta {
    directed: boolean;
    weighted: boolean;
    counts: { nodes: number; edges: number };
}

export interface GraphNode {
    id: string;
    label: string;
    attrs: Record<string, string>;
    measures?: Record<string, number>;
    module?: number;
}

export interface GraphEdge {
    source: string;
    target: string;
    weight: number;
}

export interface GraphDocument {
    meta: GraphMeta;
    nodes: GraphNode[];
    edges: GraphEdge[];
}

export type ColorMode = "module" | "anatomical" | "uniform";

export interface ViewState {
    doc: GraphDocument;
    nodeById: Map<string, GraphNode>;
    neighbors: Map<string, Set<string>>;
    selected: string | null;
    query: string;
    threshold: number;
    weightRange: { min: number; max: number };
    colorMode: ColorMode;
}

export interface SearchMatch {
    id: string;
    label: string;
    position: number;
}

/** Everything the renderer needs: what to draw and what to fade. */
export interface VisibleElements {
    nodes: string[];
    edges: GraphEdge[];
    dimmed: Set<string>;
}
