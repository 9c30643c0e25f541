// Payload shapes of the backing JSON service, verbatim.

export interface DatasetInfo {
  id: string;
  rows: number;
  attributes: string[];
}

export type PGraphEdge = [string, string];

export interface PGraphJson {
  nodes: string[];
  edges: PGraphEdge[];
}

export interface ConstraintJson {
  lhs: string[];
  rhs: string[];
  why: string[];
}

export interface RoundFeedback {
  add_superior: string[];
  add_inferior: string[];
}

export interface HistoryEntry {
  feedback: RoundFeedback;
  expression: string;
  pgraph: PGraphJson;
  winnow: string[];
}

export interface SessionSnapshot {
  id: string;
  dataset: string;
  superior: string[];
  inferior: string[];
  expression: string | null;
  pgraph: PGraphJson | null;
  winnow: string[];
  history: HistoryEntry[];
  constraints: ConstraintJson[];
}

export interface ExplanationEntry {
  id: string;
  dominated_by: string;
  better_in: string[];
  worse_in: string[];
}

export interface ElicitResult {
  expression: string;
  pgraph: PGraphJson;
  winnow: string[];
  explanation: ExplanationEntry[];
}

export interface ServiceErrorPayload {
  error: string;
  detail?: string;
  id?: string;
  dominated_by?: string;
  ids?: string[];
  width?: number;
  max_width?: number;
}

export interface SchemaAttribute {
  name: string;
  kind: "numeric" | "categorical";
  preference?: "higher" | "lower";
  ranked?: string[];
  scale?: number;
}

export interface SchemaJson {
  attributes: SchemaAttribute[];
}
