// Payload shapes of the read-only JSON API (pinned by the server's JSON
// Schema documents under src/prolivis/schemas/).

export interface OrganismEntry {
  taxid: number;
  record_count: number;
}

export interface MethodNode {
  node_id: string;
  method_name: string;
  system_type: "physical" | "genetic";
  interaction_count: number;
  size: number;
}

export interface PublicationNode {
  node_id: string;
  key: string;
  pubmed_id: number | null;
  first_author: string | null;
  interaction_count: number;
  collapsed: boolean;
  label: string;
  size?: number;
}

export interface CollectorNode {
  node_id: string;
  collector_id: string;
  method_name: string;
  member_count: number;
  member_keys: string[];
  total_count: number;
  size: number;
}

export interface SemanticEdge {
  method_name: string;
  publication: string;
  support_count: number;
}

export interface Overview {
  taxid: number;
  theta: number;
  total_records: number;
  methods: MethodNode[];
  publications: PublicationNode[];
  collectors: CollectorNode[];
  edges: SemanticEdge[];
}

export interface CollectorDetail {
  collector_id: string;
  method_name: string;
  taxid: number;
  theta: number;
  total_count: number;
  members: PublicationNode[];
}

export interface PpiNetwork {
  publication: string;
  pubmed_id: number | null;
  first_author: string | null;
  record_count: number;
  proteins: { symbol: string; display: string }[];
  edges: { a: string; b: string; multiplicity: number; methods: string[] }[];
}

export interface ProteinDetail {
  symbol: string;
  taxid: number;
  interaction_count: number;
  methods: { method_name: string; count: number }[];
  links?: Record<string, string>;
}

export interface Layout {
  kind: "publication" | "overview";
  key: string;
  seed: number;
  iterations: number;
  positions: Record<string, [number, number]>;
  bbox: [number, number, number, number];
  sizes?: Record<string, number>;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail: unknown;
}
