// Navigation state. Every level change pushes a deep copy onto the history
// stack, so going back restores the exact prior view including the viewport
// transform and method filters.

export interface ViewTransform {
  x: number;
  y: number;
  k: number;
}

export type Level = "organisms" | "overview" | "collector" | "ppi";

export interface ViewState {
  organism: number | null;
  level: Level;
  theta: number;
  methodFilters: string[]; // lowercased method names currently toggled off
  collector: string | null; // required when level === "collector"
  publication: string | null; // required when level === "ppi"
  protein: string | null;
  transform: ViewTransform;
}

export const IDENTITY: ViewTransform = { x: 0, y: 0, k: 1 };

export function initialState(theta: number): ViewState {
  return {
    organism: null,
    level: "organisms",
    theta,
    methodFilters: [],
    collector: null,
    publication: null,
    protein: null,
    transform: { ...IDENTITY },
  };
}

export function cloneState(state: ViewState): ViewState {
  return {
    ...state,
    methodFilters: [...state.methodFilters],
    transform: { ...state.transform },
  };
}

export function assertConsistent(state: ViewState): void {
  if (state.level !== "organisms" && state.organism === null) {
    throw new Error(`level ${state.level} requires an organism`);
  }
  if (state.level === "collector" && state.collector === null) {
    throw new Error("collector level requires a collector id");
  }
  if (state.level === "ppi" && state.publication === null) {
    throw new Error("ppi level requires a publication");
  }
}

export class History {
  private stack: ViewState[] = [];

  push(state: ViewState): void {
    this.stack.push(cloneState(state));
  }

  pop(): ViewState | null {
    const previous = this.stack.pop();
    return previous ? cloneState(previous) : null;
  }

  get depth(): number {
    return this.stack.length;
  }
}
