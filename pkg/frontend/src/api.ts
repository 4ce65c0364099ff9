// Thin client for the local read-only API. Only same-origin /api/ paths are
// ever requested; external database links are plain anchors the user follows.

import type {
  ApiErrorBody,
  CollectorDetail,
  Layout,
  OrganismEntry,
  Overview,
  PpiNetwork,
  ProteinDetail,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.message || `HTTP ${status}`);
  }
}

async function getJson<T>(path: string): Promise<T> {
  if (!path.startsWith("/api/")) {
    throw new Error(`refusing non-local request: ${path}`);
  }
  const response = await fetch(path, { headers: { Accept: "application/json" } });
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, body as ApiErrorBody);
  }
  return body as T;
}

export class ApiClient {
  organisms(): Promise<OrganismEntry[]> {
    return getJson("/api/organisms");
  }

  overview(taxid: number, theta: number): Promise<Overview> {
    return getJson(`/api/organisms/${taxid}/overview?theta=${theta}`);
  }

  overviewLayout(taxid: number, theta: number): Promise<Layout> {
    return getJson(`/api/layout/overview/${taxid}?theta=${theta}`);
  }

  collector(taxid: number, collectorId: string, theta: number): Promise<CollectorDetail> {
    return getJson(
      `/api/organisms/${taxid}/collectors/${encodeURIComponent(collectorId)}?theta=${theta}`,
    );
  }

  network(pubkey: string): Promise<PpiNetwork> {
    return getJson(`/api/publications/${encodeURIComponent(pubkey)}/network`);
  }

  networkLayout(pubkey: string): Promise<Layout> {
    return getJson(`/api/layout/publication/${encodeURIComponent(pubkey)}`);
  }

  protein(symbol: string, taxid: number): Promise<ProteinDetail> {
    return getJson(`/api/proteins/${encodeURIComponent(symbol)}?taxid=${taxid}`);
  }
}
